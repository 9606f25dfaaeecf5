#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xorgame {

enum class ErrorKind {
  NonNormalizedDistribution,
  NegativeProbability,
  PredicateOutOfRange,
  DimensionMismatch,
  TooLargeForBruteForce,
  NotSymmetric,
  NotPSD,
  DidNotConverge,
  DimensionGuardExceeded,
  NonUnitVector,
  MomentMatrixNotPSD,
  NonUnitState,
  NotObservable,
  IndexOutOfRange,
  StateShapeMismatch,
  NotUnitary,
  SimulationMismatch,
  InvalidParams,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is what callers switch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonNormalizedDistribution: return "NonNormalizedDistribution";
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::PredicateOutOfRange: return "PredicateOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLargeForBruteForce: return "TooLargeForBruteForce";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DidNotConverge: return "DidNotConverge";
    case ErrorKind::DimensionGuardExceeded: return "DimensionGuardExceeded";
    case ErrorKind::NonUnitVector: return "NonUnitVector";
    case ErrorKind::MomentMatrixNotPSD: return "MomentMatrixNotPSD";
    case ErrorKind::NonUnitState: return "NonUnitState";
    case ErrorKind::NotObservable: return "NotObservable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::StateShapeMismatch: return "StateShapeMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::SimulationMismatch: return "SimulationMismatch";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace xorgame
