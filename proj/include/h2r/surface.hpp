#ifndef H2R_SURFACE_HPP
#define H2R_SURFACE_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "h2r/lorentz.hpp"
#include "h2r/numerics.hpp"

namespace h2r {

/// A vector of R^3_1 x R with the product metric
/// <u,v> = u1 v1 + u2 v2 - u3 v3 + u4 v4 (signature +,+,-,+).
struct Vec4 {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, t = 0.0;

  LorentzVec3 spatial() const { return {x1, x2, x3}; }
};

Vec4 operator+(const Vec4& u, const Vec4& v);
Vec4 operator-(const Vec4& u, const Vec4& v);
Vec4 operator*(double s, const Vec4& u);

double inner4(const Vec4& u, const Vec4& v);
/// Euclidean length of the component vector; used for residual magnitudes
/// (the Lorentz norm of a near-zero vector can vanish without the vector
/// being small).
double euclid_norm(const Vec4& u);

/// A point of H^2 x R: the H^2 component lives on the upper hyperboloid
/// sheet, t is the global vertical coordinate.
struct Point4 {
  LorentzVec3 h;
  double t = 0.0;

  Vec4 as_vec4() const { return {h.x1, h.x2, h.x3, t}; }
};

struct Rect {
  double x0, x1, y0, y1;

  bool contains(double x, double y, double margin = 0.0) const {
    return x >= x0 + margin && x <= x1 - margin && y >= y0 + margin &&
           y <= y1 - margin;
  }
  Rect shrunk(double margin) const;
};

/// A parametric surface patch (x,y) -> H^2 x R. Analytic partials are
/// optional; when absent they are replaced by 5-point finite differences
/// (which then require stencil room inside `domain`).
struct Immersion {
  std::function<Point4(double, double)> eval;
  std::function<Vec4(double, double)> dx;  // may be null
  std::function<Vec4(double, double)> dy;  // may be null
  Rect domain;
  std::string tag;

  bool has_analytic_partials() const { return dx != nullptr && dy != nullptr; }
};

struct SampleOptions {
  double h_first = kFdStep;    // step for first-derivative stencils
  double h_second = 1e-2;      // step for second-derivative quantities
  // Orients the computed unit normal: the sign maximizing <xi, *reference>
  // is chosen. Without a reference the fourth component is made >= 0.
  std::optional<Vec4> reference_normal;
};

/// All pointwise geometric data of the immersed patch at one (x,y).
struct GeometrySample {
  double x = 0.0, y = 0.0;
  Point4 point;
  Vec4 f_x, f_y;                     // coordinate tangents
  double E = 0.0, Fm = 0.0, G = 0.0; // induced metric (positive definite)
  Vec4 xi_tilde;                     // normal of H^2 x R along M, timelike
  Vec4 xi;                           // unit spacelike normal of M in H^2 x R
  double theta = 0.0;                // angle of xi against d/dt, in [0,pi]
  Vec4 T;                            // tangential part of d/dt, |T|^2=sin^2(theta)
  std::array<std::array<double, 2>, 2> shape{};  // A in the (dx,dy) basis
  double k1 = 0.0, k2 = 0.0;         // principal curvatures; k1 = T-eigenvalue
  double K = 0.0;                    // det A - cos^2(theta)
  double Hmean = 0.0;                // (k1+k2)/2
  bool t_degenerate = false;         // sin(theta) <= 1e-6: T-dependent data unreliable
};

/// f_x, f_y at (x,y): analytic partials when the immersion provides them,
/// componentwise diff1 otherwise.
std::pair<Vec4, Vec4> partials(const Immersion& imm, double x, double y,
                               double h = kFdStep);

/// The two normals at (x,y): xi_tilde = (F1,F2,F3,0) and the unit spacelike
/// xi Lorentz-orthogonal to f_x, f_y and xi_tilde (sign per SampleOptions).
/// Throws DegeneratePoint when the orthogonality system is rank-deficient.
std::pair<Vec4, Vec4> normals(const Immersion& imm, double x, double y,
                              const SampleOptions& opts = {});

/// theta = arccos(xi_4) in [0,pi]; T = d/dt - cos(theta) xi.
std::pair<double, Vec4> angle_and_t(const Vec4& xi);

/// Full pointwise sample: metric, normals, angle, shape operator (finite
/// differences of the xi field projected back with the Gram system),
/// principal curvatures and the curvature scalars.
GeometrySample sample_geometry(const Immersion& imm, double x, double y,
                               const SampleOptions& opts = {});

/// Solve the 2x2 Gram system [E F; F G] [a b]^T = [<w,f_x>, <w,f_y>]^T and
/// return the tangential projection coefficients (a,b) of w.
std::array<double, 2> tangent_coefficients(const GeometrySample& s,
                                           const Vec4& w);

/// Metric coefficients (E, F, G) as a field; the Brioschi formula consumes
/// this directly so test fixtures can bypass an immersion.
using MetricField = std::function<std::array<double, 3>(double, double)>;

MetricField metric_field(const Immersion& imm, double h = kFdStep);

/// Intrinsic Gaussian curvature of a metric field by the Brioschi formula
/// with 5-point stencils at step h.
double brioschi_curvature(const MetricField& g, double x, double y, double h);

/// Intrinsic curvature of the induced metric at (x,y); Richardson-combined
/// Brioschi at steps h_second and h_second/2.
double gauss_intrinsic(const Immersion& imm, double x, double y,
                       const SampleOptions& opts = {});

/// Normal-bundle curvature R_perp(dx,dy) xi of the codimension-2 immersion
/// into R^4_1, via nested finite differences of the normal-connection
/// coefficient fields. Orientation follows the convention in which the
/// result equals sin(theta) * theta_y * xi_tilde on graph charts.
Vec4 normal_curvature(const Immersion& imm, double x, double y,
                      const SampleOptions& opts = {});

}  // namespace h2r

#endif
