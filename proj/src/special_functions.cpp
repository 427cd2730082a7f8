#include "h2r/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "h2r/errors.hpp"
#include "h2r/numerics.hpp"

namespace h2r {

namespace {

constexpr double kSpecTol = 1e-12;

double ellip_integrand(double t, double m) {
  const double s = std::sin(t);
  const double rad = 1.0 - m * s * s;
  return 1.0 / std::sqrt(rad);
}

}  // namespace

double ellip_f(double z, double m) {
  if (!std::isfinite(z) || !std::isfinite(m)) {
    raise(ErrorCode::InvalidArgument, "ellip_f: arguments must be finite");
  }
  if (m >= 1.0) {
    const double zmax = std::asin(1.0 / std::sqrt(m));
    if (std::abs(z) >= zmax) {
      raise(ErrorCode::SingularIntegrand,
            "ellip_f: integrand singular on [0,z] for m=" + std::to_string(m) +
                ", |z| >= " + std::to_string(zmax));
    }
  }
  if (z == 0.0) return 0.0;
  return integrate([m](double t) { return ellip_integrand(t, m); }, 0.0, z,
                   kSpecTol);
}

double jacobi_am(double u, double m) {
  if (!(m < 1.0)) {
    raise(ErrorCode::InvalidArgument,
          "jacobi_am: requires m < 1, got m=" + std::to_string(m));
  }
  if (!std::isfinite(u)) {
    raise(ErrorCode::InvalidArgument, "jacobi_am: u must be finite");
  }
  if (u == 0.0) return 0.0;

  // The integrand is pinned between gmin and gmax, which brackets the root:
  //   m <= 0:  1/sqrt(1-m) <= g <= 1   ->  am in [u, u*sqrt(1-m)]
  //   0<m<1:   1 <= g <= 1/sqrt(1-m)   ->  am in [u*sqrt(1-m), u]
  const double stretch = std::sqrt(1.0 - std::min(m, 0.0));
  const double shrink = std::sqrt(1.0 - std::max(m, 0.0));
  double lo, hi;
  if (u > 0.0) {
    lo = u * shrink;
    hi = u * stretch;
  } else {
    lo = u * stretch;
    hi = u * shrink;
  }

  // Newton on F(theta)-u with incremental quadrature: F at the next iterate
  // is F at the current one plus a short integral, so each step is cheap.
  double theta = 0.5 * (lo + hi);
  double f_theta = ellip_f(theta, m);
  const double tol = 1e-14 * std::max(1.0, std::abs(u));
  for (int iter = 0; iter < 80; ++iter) {
    const double resid = f_theta - u;
    if (std::abs(resid) <= tol) return theta;
    if (resid > 0.0) {
      hi = std::min(hi, theta);
    } else {
      lo = std::max(lo, theta);
    }
    const double s = std::sin(theta);
    double next = theta - resid * std::sqrt(1.0 - m * s * s);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    f_theta += integrate([m](double t) { return ellip_integrand(t, m); },
                         theta, next, kSpecTol);
    theta = next;
  }
  raise(ErrorCode::NoConvergence,
        "jacobi_am: root finder failed at u=" + std::to_string(u) +
            ", m=" + std::to_string(m));
}

double fresnel_c(double z) {
  if (!std::isfinite(z)) {
    raise(ErrorCode::InvalidArgument, "fresnel_c: z must be finite");
  }
  if (z == 0.0) return 0.0;
  return integrate(
      [](double t) { return std::cos(0.5 * std::numbers::pi * t * t); }, 0.0,
      z, kSpecTol);
}

double fresnel_s(double z) {
  if (!std::isfinite(z)) {
    raise(ErrorCode::InvalidArgument, "fresnel_s: z must be finite");
  }
  if (z == 0.0) return 0.0;
  return integrate(
      [](double t) { return std::sin(0.5 * std::numbers::pi * t * t); }, 0.0,
      z, kSpecTol);
}

}  // namespace h2r
