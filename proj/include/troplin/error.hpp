#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace troplin {

enum class ErrorCode {
  ZeroVector,
  NonPositiveParameter,
  DegenerateLattice,
  NotUnimodular,
  NonDiscretePeriodLattice,
  IrrationalData,
  UnsupportedManifoldKind,
  UnknownGenerator,
  InvalidCurve,
  NotAForm,
  WrongAmbient,
  NotHorizontal,
  DimensionMismatch,
  NotADeformation,
  FormNotInvariant,
  NonZeroDegree,
  NotPrincipal,
  SpecialFiber,
  OnSection,
  ValidationFailed,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the Python module) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace troplin
