#ifndef H2R_ERRORS_HPP
#define H2R_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace h2r {

// Every recoverable failure in the library carries one of these codes so
// callers (and the CLI exit-status mapping) can dispatch without string
// matching.
enum class ErrorCode {
  NoConvergence,
  DomainClip,
  SingularIntegrand,
  NonSpacelikeSpeed,
  NotOnH2,
  DegeneratePoint,
  DegenerateAngle,
  NotCanonical,
  InvalidCurvePair,
  InvalidFrame,
  InvalidConstants,
  DegenerateParameters,
  EmptyDomain,
  UnknownExample,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code);

// Numeric failures are transient (tolerances, step sizes); the rest are
// malformed inputs or configuration.
inline bool is_numeric_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::DomainClip:
    case ErrorCode::SingularIntegrand:
    case ErrorCode::DegeneratePoint:
    case ErrorCode::DegenerateAngle:
      return true;
    default:
      return false;
  }
}

}  // namespace h2r

#endif
