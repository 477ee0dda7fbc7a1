#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace detsched {

enum class ErrorKind {
  BetaNonPositive,
  NegativeParameter,
  DuplicateId,
  EmptyInstance,
  NotAPermutation,
  InfeasibleSchedule,
  UnknownJobId,
  InstanceTooLarge,
  DegenerateOptimum,
  InvalidPseudomatching,
  InvalidBoundingSets,
  ConstructionFailed,
  BadSpec,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BetaNonPositive: return "BetaNonPositive";
    case ErrorKind::NegativeParameter: return "NegativeParameter";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::EmptyInstance: return "EmptyInstance";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::InfeasibleSchedule: return "InfeasibleSchedule";
    case ErrorKind::UnknownJobId: return "UnknownJobId";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::DegenerateOptimum: return "DegenerateOptimum";
    case ErrorKind::InvalidPseudomatching: return "InvalidPseudomatching";
    case ErrorKind::InvalidBoundingSets: return "InvalidBoundingSets";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// The single exception type thrown by the library; `kind()` identifies the
/// failure class, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace detsched
