#include "h2r/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace h2r {

Grid1D::Grid1D(double a, double b, int count) : start(a), stop(b), n(count) {
  if (!(a < b)) {
    raise(ErrorCode::InvalidArgument, "Grid1D: start must be < stop");
  }
  if (count < 2) {
    raise(ErrorCode::InvalidArgument, "Grid1D: need at least 2 samples");
  }
}

namespace {

struct GslWorkspace {
  gsl_integration_workspace* ws;
  GslWorkspace() : ws(gsl_integration_workspace_alloc(4096)) {}
  ~GslWorkspace() { gsl_integration_workspace_free(ws); }
};

double call_fn(double x, void* params) {
  return (*static_cast<const RealFn*>(params))(x);
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double tol) {
  if (!(tol > 0.0)) {
    raise(ErrorCode::InvalidArgument, "integrate: tol must be > 0");
  }
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol);

  static thread_local GslWorkspace workspace;
  gsl_set_error_handler_off();

  gsl_function gf;
  gf.function = &call_fn;
  gf.params = const_cast<RealFn*>(&f);

  double result = 0.0, abserr = 0.0;
  int status =
      gsl_integration_qag(&gf, a, b, tol, 0.0, 4096, GSL_INTEG_GAUSS15,
                          workspace.ws, &result, &abserr);
  if (status != 0) {
    // Roundoff-limited results are fine as long as the error estimate is
    // still inside the requested band.
    if (abserr > 10.0 * tol) {
      raise(ErrorCode::NoConvergence,
            "integrate: quadrature failed (gsl status " +
                std::string(gsl_strerror(status)) +
                ", abserr=" + std::to_string(abserr) + ")");
    }
  }
  return result;
}

std::vector<double> cumulative(const RealFn& f, double x0, const Grid1D& grid,
                               double tol) {
  std::vector<double> out(static_cast<std::size_t>(grid.n));
  const double seg_tol = tol / grid.n;

  // Walk outward from the node nearest x0 so segment errors do not pile up
  // in one direction.
  int anchor = 0;
  double best = std::abs(grid.node(0) - x0);
  for (int i = 1; i < grid.n; ++i) {
    const double d = std::abs(grid.node(i) - x0);
    if (d < best) {
      best = d;
      anchor = i;
    }
  }
  out[anchor] = integrate(f, x0, grid.node(anchor), seg_tol);
  for (int i = anchor + 1; i < grid.n; ++i) {
    out[i] = out[i - 1] + integrate(f, grid.node(i - 1), grid.node(i), seg_tol);
  }
  for (int i = anchor - 1; i >= 0; --i) {
    out[i] = out[i + 1] - integrate(f, grid.node(i), grid.node(i + 1), seg_tol);
  }
  return out;
}

namespace {

void check_stencil(double x, double h, const Interval& dom, const char* who) {
  if (!(h > 0.0)) {
    raise(ErrorCode::InvalidArgument, std::string(who) + ": h must be > 0");
  }
  if (!dom.contains(x - 2.0 * h) || !dom.contains(x + 2.0 * h)) {
    raise(ErrorCode::DomainClip,
          std::string(who) + ": stencil [x-2h, x+2h] leaves the domain at x=" +
              std::to_string(x) + ", h=" + std::to_string(h));
  }
}

}  // namespace

double diff1(const RealFn& f, double x, double h, const Interval& dom) {
  check_stencil(x, h, dom, "diff1");
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
         (12.0 * h);
}

double diff2(const RealFn& f, double x, double h, const Interval& dom) {
  check_stencil(x, h, dom, "diff2");
  return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2.0 * h)) /
         (12.0 * h * h);
}

Trajectory rk4(const OdeField& field, double y0,
               const std::vector<double>& state0, double y1, double h) {
  if (!(h > 0.0)) {
    raise(ErrorCode::InvalidArgument, "rk4: h must be > 0");
  }
  if (!(y1 > y0)) {
    raise(ErrorCode::InvalidArgument, "rk4: requires y1 > y0");
  }

  const std::size_t dim = state0.size();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  Trajectory traj;
  traj.params.push_back(y0);
  traj.states.push_back(state0);

  std::vector<double> state = state0;
  double y = y0;
  while (y < y1) {
    const double step = std::min(h, y1 - y);
    field(y, state, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = state[i] + 0.5 * step * k1[i];
    field(y + 0.5 * step, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = state[i] + 0.5 * step * k2[i];
    field(y + 0.5 * step, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = state[i] + step * k3[i];
    field(y + step, tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      state[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    y = (step == h) ? y + h : y1;
    traj.params.push_back(y);
    traj.states.push_back(state);
  }
  traj.params.back() = y1;  // endpoint exact
  return traj;
}

HermiteTable::HermiteTable(Grid1D grid, std::vector<double> values,
                           std::vector<double> derivs)
    : grid_(grid), values_(std::move(values)), derivs_(std::move(derivs)) {
  if (values_.size() != static_cast<std::size_t>(grid_.n) ||
      derivs_.size() != static_cast<std::size_t>(grid_.n)) {
    raise(ErrorCode::InvalidArgument, "HermiteTable: size mismatch");
  }
}

HermiteTable HermiteTable::primitive(const RealFn& f, double x0,
                                     const Grid1D& grid, double tol) {
  std::vector<double> vals = cumulative(f, x0, grid, tol);
  std::vector<double> ders(vals.size());
  for (int i = 0; i < grid.n; ++i) ders[static_cast<std::size_t>(i)] = f(grid.node(i));
  return HermiteTable(grid, std::move(vals), std::move(ders));
}

double HermiteTable::operator()(double x) const {
  const double hx = (grid_.stop - grid_.start) / (grid_.n - 1);
  int k = static_cast<int>(std::floor((x - grid_.start) / hx));
  k = std::clamp(k, 0, grid_.n - 2);
  const double t = (x - grid_.node(k)) / hx;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  const std::size_t i = static_cast<std::size_t>(k);
  return h00 * values_[i] + h10 * hx * derivs_[i] + h01 * values_[i + 1] +
         h11 * hx * derivs_[i + 1];
}

double HermiteTable::derivative(double x) const {
  const double hx = (grid_.stop - grid_.start) / (grid_.n - 1);
  int k = static_cast<int>(std::floor((x - grid_.start) / hx));
  k = std::clamp(k, 0, grid_.n - 2);
  const double t = (x - grid_.node(k)) / hx;
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / hx;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / hx;
  const double d11 = 3.0 * t2 - 2.0 * t;
  const std::size_t i = static_cast<std::size_t>(k);
  return d00 * values_[i] + d10 * derivs_[i] + d01 * values_[i + 1] +
         d11 * derivs_[i + 1];
}

}  // namespace h2r
