#ifndef H2R_FAMILIES_HPP
#define H2R_FAMILIES_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "h2r/lorentz.hpp"
#include "h2r/numerics.hpp"
#include "h2r/surface.hpp"

namespace h2r {

using Curve3 = std::function<LorentzVec3(double)>;
using Field2 = std::function<double(double, double)>;

/// Angle profile x -> theta(x) in (0, pi). `anchor` is where the profile's
/// primitives (phi of cos theta, chi of sin theta) vanish: 0 when the domain
/// contains it, the left edge otherwise.
struct AngleProfile {
  RealFn theta;
  RealFn theta_prime;
  double x0 = 0.0;
  double x1 = 1.0;
  double anchor = 0.0;
};

/// Builds a validated profile; theta_prime may be null (finite differences
/// are substituted). Rejects profiles leaving (0, pi) on the domain.
AngleProfile make_angle_profile(RealFn theta, RealFn theta_prime, double x0,
                                double x1);

AngleProfile theta_linear(double slope, double intercept, double x0, double x1);
AngleProfile theta_constant(double value, double x0, double x1);

/// The two generating curves of a surface with T principal: A on the de
/// Sitter space, B on H^2, Lorentz-orthogonal, with parallel speeds.
struct CurvePair {
  Curve3 A, B, Aprime, Bprime;
};

/// Checks <A,A>=1, <B,B>=-1, <A,B>=0 and A' || B' on sampled y values;
/// throws InvalidCurvePair naming the first violated relation.
void validate_curve_pair(const CurvePair& pair, double y0, double y1,
                         double tol = 1e-8, int samples = 41);

/// Re-anchors the hyperbolic angle: Ã = A cosh(phi0) + B sinh(phi0),
/// B̃ = A sinh(phi0) + B cosh(phi0). Preserves all CurvePair relations.
CurvePair shift_phi(const CurvePair& pair, double phi0);

/// Built-in pairs: "geodesic", "rotation", "parabola".
CurvePair curve_pair_catalog(const std::string& id);

/// F(x,y) = (A(y) sinh(phi(x)+off) + B(y) cosh(phi(x)+off), chi(x)) with
/// phi' = cos(theta), chi' = sin(theta), both anchored at angle.anchor.
/// Analytic partials attached; primitives cached on a dense Hermite table.
Immersion make_pair_surface(const CurvePair& pair, const AngleProfile& angle,
                            Rect rect, double phi_offset = 0.0);

/// F(x,y) = (f(y) cosh(phi) + N_f(y) sinh(phi), chi(x)) for a curve f in H^2
/// with spacelike speed; N_f is its unit normal. Delegates to the pair form
/// with A = N_f, B = f (A' obtained by differentiating N_f).
Immersion make_curve_surface(const Curve3& f, const Curve3& fprime,
                             const AngleProfile& angle, Rect rect);

/// Minimal surfaces with T principal. theta = arctan(1/a),
/// a = c1 cosh x + c2 sinh x; the branch is decided by the sign of
/// s = 1 + c1^2 - c2^2 (equality band 1e-12). Domain defaults to a rectangle
/// on which a does not vanish; chi is anchored at 0.
Immersion make_minimal_family(double c1, double c2,
                              std::optional<Rect> rect = std::nullopt);

/// Flat surfaces with T principal. theta = arctan(sqrt(x^2+c)); branches on
/// the sign of c+1 (band 1e-12). x must stay right of the analytic edge
/// (0 for c >= 0, sqrt(-c) for c < 0, 1 for c = -1); chi anchored there.
Immersion make_flat_family(double c, std::optional<Rect> rect = std::nullopt);

/// Admissible default rectangles of the two classified families.
Rect minimal_family_default_rect(double c1, double c2);
Rect flat_family_default_rect(double c);

/// ---- frame ODE layer -------------------------------------------------

/// The three generation mechanisms, named after the causal character of H'.
enum class FrameKind { Spacelike = 1, Timelike = 2, Lightlike = 3 };

/// Instantaneous frame (A, B, H) of the generating curves; also serves as
/// the constants form, since A(0) = c1 and B(0) = c2.
struct FrameState {
  LorentzVec3 A, B, H;
};

/// <A,A>=1, <B,B>=-1, <H,H>=1, pairwise orthogonal (tol 1e-8); throws
/// InvalidFrame.
void validate_frame_state(const FrameState& st, double tol = 1e-8);

/// A' = H cosh(psi), B' = H sinh(psi), H' = B sinh(psi) - A cosh(psi)
/// (Spacelike) or A' = H sinh(psi), B' = H cosh(psi),
/// H' = -A sinh(psi) + B cosh(psi) (Timelike).
FrameState frame_velocity(FrameKind kind, const RealFn& psi, double y,
                          const FrameState& st);

/// RK4 flow of the frame system on [ymin, ymax] (0 inside or at an end),
/// cached on uniform nodes with cubic Hermite evaluation in between.
class FrameFlow {
 public:
  FrameFlow(FrameKind kind, RealFn psi, FrameState init, double ymin,
            double ymax, double step = kRk4Step);

  FrameState state(double y) const;
  FrameState velocity(double y) const;
  /// Worst Gram-product drift over all trajectory nodes.
  double max_invariant_drift() const;

 private:
  struct Half;
  FrameKind kind_;
  RealFn psi_;
  std::shared_ptr<const Half> pos_;  // y >= 0
  std::shared_ptr<const Half> neg_;  // y <= 0 (reflected)
  FrameState init_;
};

/// Surface generated by integrating the frame ODEs (Spacelike/Timelike
/// kinds) and assembling the pair form with the given angle profile.
Immersion make_frame_family(FrameKind kind, const RealFn& psi,
                            const FrameState& init, const AngleProfile& angle,
                            Rect rect, double ode_step = kRk4Step);

/// Lightlike kind: closed-form curves from constant vectors c1, c2, c3 with
/// <c1,c1>=1, <c2,c2>=-1, <c3,c3>=1, pairwise orthogonal (InvalidConstants
/// otherwise). `sign` selects the branch (+1 or -1).
Immersion make_null_frame_family(const LorentzVec3& c1, const LorentzVec3& c2,
                                 const LorentzVec3& c3, int sign,
                                 const AngleProfile& angle, Rect rect);

/// The closed-form curve pair of the Lightlike branch (exposed for tests).
CurvePair null_frame_pair(const LorentzVec3& c1, const LorentzVec3& c2,
                          const LorentzVec3& c3, int sign);

/// ---- catalog & fixtures ----------------------------------------------

/// Closed-form surfaces: "rotation" (theta = x), "rotation_arccos",
/// "psi_linear_spacelike", "psi_linear_timelike", "parabolic_null",
/// "cornu", "cmc". Throws UnknownExample.
Immersion make_named_example(const std::string& id);
std::vector<std::string> named_example_ids();

/// Angle field of the minimal-surface equation:
/// theta(x,y) = am(sign*(k x + y)/sqrt(k^2+1) | -c), k != 0, c >= 0.
Field2 minimal_angle_field(double k, double c, int sign = +1);

/// Positive-control fixtures.
/// Sheared pair form: theta(x)+eps*sin(y) drives both primitives, so the
/// chart loses orthogonality and T is no longer principal.
Immersion make_perturbed_sheared(double eps,
                                 std::optional<Rect> rect = std::nullopt);
/// Same angle injection realized in the t-graph chart (fourth component
/// identically x): the normal-curvature identity stays exact while the
/// surface is genuinely not normally flat.
Immersion make_perturbed_graph(double eps,
                               std::optional<Rect> rect = std::nullopt);
/// Scales the H^2 component off the hyperboloid; breaks every ambient
/// identity while keeping a smooth surface.
Immersion make_off_h2(const Immersion& base, double scale);

/// Curves in H^2 for make_curve_surface: "geodesic" and "circle" (with
/// radius parameter). Returns (f, f').
std::pair<Curve3, Curve3> h2_curve_catalog(const std::string& id,
                                           double radius = 1.0);

}  // namespace h2r

#endif
