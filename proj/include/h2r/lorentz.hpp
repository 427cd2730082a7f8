#ifndef H2R_LORENTZ_HPP
#define H2R_LORENTZ_HPP

#include <cmath>
#include <string>

#include "h2r/errors.hpp"

namespace h2r {

/// A vector of the Minkowski 3-space R^3_1 with metric dx1^2 + dx2^2 - dx3^2.
/// Carries curve values (A, B, H, f) and constant vectors alike.
struct LorentzVec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  LorentzVec3() = default;
  LorentzVec3(double a, double b, double c);
};

LorentzVec3 operator+(const LorentzVec3& u, const LorentzVec3& v);
LorentzVec3 operator-(const LorentzVec3& u, const LorentzVec3& v);
LorentzVec3 operator*(double s, const LorentzVec3& u);
LorentzVec3 operator*(const LorentzVec3& u, double s);

/// <u,v> = u1 v1 + u2 v2 - u3 v3.
double inner3(const LorentzVec3& u, const LorentzVec3& v);

/// Lorentzian cross product:
/// u ⊠ v = (u2 v3 - u3 v2,  u3 v1 - u1 v3,  u2 v1 - u1 v2).
/// The result is Lorentz-orthogonal to both factors.
LorentzVec3 cross_l(const LorentzVec3& u, const LorentzVec3& v);

enum class CausalKind { Spacelike, Timelike, Lightlike };

struct CausalCharacter {
  CausalKind kind;
  double norm2;      // <u,u> that produced the classification
  double tolerance;  // |<u,u>| <= tolerance means Lightlike
};

constexpr double kCausalTol = 1e-9;

/// Spacelike iff <u,u> > tol, Timelike iff <u,u> < -tol, else Lightlike.
CausalCharacter causal_character(const LorentzVec3& u, double tol = kCausalTol);

/// Membership in the upper hyperboloid sheet: |<p,p> + 1| <= tol and x3 > 0.
bool in_h2(const LorentzVec3& p, double tol = kCausalTol);

/// Membership in the de Sitter space: |<u,u> - 1| <= tol.
bool in_desitter(const LorentzVec3& u, double tol = kCausalTol);

/// Unit normal of a curve in H^2 with spacelike speed:
///   N = (f ⊠ f') / sqrt(<f',f'>).
/// Satisfies <N,N> = 1, <N,f> = 0, <N,f'> = 0. The opposite sign produces a
/// congruent surface downstream; the + sign is the library convention.
/// Throws NonSpacelikeSpeed when <f',f'> <= tol.
LorentzVec3 curve_normal(const LorentzVec3& f, const LorentzVec3& fprime,
                         double tol = 1e-12);

std::string to_string(const LorentzVec3& u);

}  // namespace h2r

#endif
