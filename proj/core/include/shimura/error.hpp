#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shimura {

// Every failure surfaced by the library carries one of these kinds. The CLI
// prints `name(kind)` verbatim, so the spelling is part of the interface.
enum class ErrorKind {
  NotPrime,
  DegreeZero,
  InvalidArgument,
  ContextMismatch,
  DimensionMismatch,
  NotInvertible,
  InsufficientPrecision,
  SlopeBoundExceeded,
  SlopeOutOfRange,
  NotInDistinguishedOrbit,
  SummandNotRankOne,
  IdenticallyZeroToTruncation,
  NonUnitWhereUnitRequired,
  SandwichFails,
  SingularCurve,
  MethodDisagreement,
  MassMismatch,
  NonLinearResult,
  PCurvatureNonzero,
  InsufficientTruncation,
  ParseError,
};

constexpr std::string_view name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::SlopeBoundExceeded: return "SlopeBoundExceeded";
    case ErrorKind::SlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorKind::NotInDistinguishedOrbit: return "NotInDistinguishedOrbit";
    case ErrorKind::SummandNotRankOne: return "SummandNotRankOne";
    case ErrorKind::IdenticallyZeroToTruncation: return "IdenticallyZeroToTruncation";
    case ErrorKind::NonUnitWhereUnitRequired: return "NonUnitWhereUnitRequired";
    case ErrorKind::SandwichFails: return "SandwichFails";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::MethodDisagreement: return "MethodDisagreement";
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::NonLinearResult: return "NonLinearResult";
    case ErrorKind::PCurvatureNonzero: return "PCurvatureNonzero";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept { return name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) raise(kind, what);
}

}  // namespace shimura
