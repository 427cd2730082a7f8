#ifndef H2R_NUMERICS_HPP
#define H2R_NUMERICS_HPP

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "h2r/errors.hpp"

namespace h2r {

using RealFn = std::function<double(double)>;

struct Grid1D {
  double start;
  double stop;
  int n;  // sample count, >= 2

  Grid1D(double a, double b, int count);
  double node(int i) const { return start + (stop - start) * i / (n - 1); }
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x >= lo && x <= hi; }
};

constexpr double kQuadTol = 1e-10;

/// Adaptive quadrature of f over [a,b] with absolute tolerance `tol`
/// (Gauss-Kronrod 15-point bisection). integrate(f,a,a) == 0 exactly and
/// integrate(f,b,a) == -integrate(f,a,b). Throws NoConvergence when the
/// subdivision limit is exhausted without meeting the tolerance.
double integrate(const RealFn& f, double a, double b, double tol = kQuadTol);

/// Values of x -> integral from x0 to grid.node(i) of f, for every node.
/// Accumulated segment-by-segment so adjacent nodes stay consistent.
std::vector<double> cumulative(const RealFn& f, double x0, const Grid1D& grid,
                               double tol = kQuadTol);

constexpr double kFdStep = 1e-3;

/// Central 5-point first derivative, O(h^4). `dom` guards the stencil:
/// DomainClip when [x-2h, x+2h] leaves it.
double diff1(const RealFn& f, double x, double h = kFdStep,
             const Interval& dom = Interval{});

/// Central 5-point second derivative, O(h^4).
double diff2(const RealFn& f, double x, double h = kFdStep,
             const Interval& dom = Interval{});

/// (16*d_half - d_full)/15 for O(h^4) estimates at steps h and h/2.
inline double richardson4(double d_full, double d_half) {
  return (16.0 * d_half - d_full) / 15.0;
}

/// y' = field(y, state). in-place derivative into `deriv`.
using OdeField =
    std::function<void(double, std::span<const double>, std::span<double>)>;

struct Trajectory {
  std::vector<double> params;               // strictly increasing
  std::vector<std::vector<double>> states;  // one state per parameter

  std::size_t size() const { return params.size(); }
};

constexpr double kRk4Step = 1e-3;

/// Classical fixed-step RK4 from y0 to y1 (y1 > y0); the final step is
/// shortened so the trajectory ends exactly at y1.
Trajectory rk4(const OdeField& field, double y0,
               const std::vector<double>& state0, double y1,
               double h = kRk4Step);

/// Cubic Hermite interpolation of a sampled function with known exact
/// derivative. Used to cache quadrature-defined primitives (and RK4 states)
/// so immersion evaluators stay cheap inside FD stencils.
class HermiteTable {
 public:
  HermiteTable() = default;
  /// Samples values[i] = g(node_i), derivs[i] = g'(node_i) on grid nodes.
  HermiteTable(Grid1D grid, std::vector<double> values,
               std::vector<double> derivs);

  /// Builds the table for the primitive of `f` anchored at x0
  /// (value 0 at x0), with g' = f evaluated exactly at nodes.
  static HermiteTable primitive(const RealFn& f, double x0, const Grid1D& grid,
                                double tol = kQuadTol);

  double operator()(double x) const;
  double derivative(double x) const;  // piecewise-Hermite derivative

 private:
  Grid1D grid_{0.0, 1.0, 2};
  std::vector<double> values_;
  std::vector<double> derivs_;
};

}  // namespace h2r

#endif
