#include "h2r/lorentz.hpp"

#include <cmath>
#include <sstream>

namespace h2r {

LorentzVec3::LorentzVec3(double a, double b, double c) : x1(a), x2(b), x3(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    raise(ErrorCode::InvalidArgument,
          "LorentzVec3: components must be finite");
  }
}

LorentzVec3 operator+(const LorentzVec3& u, const LorentzVec3& v) {
  return {u.x1 + v.x1, u.x2 + v.x2, u.x3 + v.x3};
}

LorentzVec3 operator-(const LorentzVec3& u, const LorentzVec3& v) {
  return {u.x1 - v.x1, u.x2 - v.x2, u.x3 - v.x3};
}

LorentzVec3 operator*(double s, const LorentzVec3& u) {
  return {s * u.x1, s * u.x2, s * u.x3};
}

LorentzVec3 operator*(const LorentzVec3& u, double s) { return s * u; }

double inner3(const LorentzVec3& u, const LorentzVec3& v) {
  return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

LorentzVec3 cross_l(const LorentzVec3& u, const LorentzVec3& v) {
  return {u.x2 * v.x3 - u.x3 * v.x2,
          u.x3 * v.x1 - u.x1 * v.x3,
          u.x2 * v.x1 - u.x1 * v.x2};
}

CausalCharacter causal_character(const LorentzVec3& u, double tol) {
  if (!(tol > 0.0)) {
    raise(ErrorCode::InvalidArgument, "causal_character: tol must be > 0");
  }
  const double n2 = inner3(u, u);
  CausalKind kind = CausalKind::Lightlike;
  if (n2 > tol) {
    kind = CausalKind::Spacelike;
  } else if (n2 < -tol) {
    kind = CausalKind::Timelike;
  }
  return {kind, n2, tol};
}

bool in_h2(const LorentzVec3& p, double tol) {
  if (!(tol > 0.0)) {
    raise(ErrorCode::InvalidArgument, "in_h2: tol must be > 0");
  }
  return std::abs(inner3(p, p) + 1.0) <= tol && p.x3 > 0.0;
}

bool in_desitter(const LorentzVec3& u, double tol) {
  if (!(tol > 0.0)) {
    raise(ErrorCode::InvalidArgument, "in_desitter: tol must be > 0");
  }
  return std::abs(inner3(u, u) - 1.0) <= tol;
}

LorentzVec3 curve_normal(const LorentzVec3& f, const LorentzVec3& fprime,
                         double tol) {
  const double speed2 = inner3(fprime, fprime);
  if (!(speed2 > tol)) {
    raise(ErrorCode::NonSpacelikeSpeed,
          "curve_normal: curve speed is not spacelike, <f',f'> = " +
              std::to_string(speed2));
  }
  return (1.0 / std::sqrt(speed2)) * cross_l(f, fprime);
}

std::string to_string(const LorentzVec3& u) {
  std::ostringstream os;
  os << "(" << u.x1 << ", " << u.x2 << ", " << u.x3 << ")";
  return os.str();
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainClip: return "DomainClip";
    case ErrorCode::SingularIntegrand: return "SingularIntegrand";
    case ErrorCode::NonSpacelikeSpeed: return "NonSpacelikeSpeed";
    case ErrorCode::NotOnH2: return "NotOnH2";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::InvalidCurvePair: return "InvalidCurvePair";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::InvalidConstants: return "InvalidConstants";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace h2r
