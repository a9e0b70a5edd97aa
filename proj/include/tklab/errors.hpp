#pragma once

#include <stdexcept>
#include <string>

namespace tklab {

enum class ErrorKind {
  DegenerateInput,
  PoleEvaluation,
  NotInH2,
  CircleZero,
  CircleSingularity,
  WindingMismatch,
  TrivialKernel,
  NotInKernel,
  HypothesisViolated,
  RankLoss,
  NotNearlyInvariant,
  AllVanishAtOrigin,
  GapFailure,
  DimensionMismatch,
  QuadratureMismatch,
  InconsistencyDetected,
  ParseError,
  ValidationError,
  UnknownSuite,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // 2 = the request itself was invalid; 3 = two internal routes disagreed,
  // which is never acceptable.  Plain check failures exit 1 without throwing.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::WindingMismatch:
      case ErrorKind::QuadratureMismatch:
      case ErrorKind::GapFailure:
      case ErrorKind::InconsistencyDetected:
        return 3;
      default:
        return 2;
    }
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::NotInH2: return "NotInH2";
    case ErrorKind::CircleZero: return "CircleZero";
    case ErrorKind::CircleSingularity: return "CircleSingularity";
    case ErrorKind::WindingMismatch: return "WindingMismatch";
    case ErrorKind::TrivialKernel: return "TrivialKernel";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::RankLoss: return "RankLoss";
    case ErrorKind::NotNearlyInvariant: return "NotNearlyInvariant";
    case ErrorKind::AllVanishAtOrigin: return "AllVanishAtOrigin";
    case ErrorKind::GapFailure: return "GapFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::QuadratureMismatch: return "QuadratureMismatch";
    case ErrorKind::InconsistencyDetected: return "InconsistencyDetected";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Error";
}

}  // namespace tklab
