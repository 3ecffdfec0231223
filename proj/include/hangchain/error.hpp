#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hangchain {

enum class ErrorCode {
  // Model validation.
  TooFewLinks,
  LengthMismatch,
  NonPositiveMass,
  NonPositiveLength,
  SpanTooShort,
  SpanTooLong,
  // Solvers.
  NonPositiveMu,
  NotSymmetric,
  BracketingFailure,
  MaxIterations,
  SingularJacobian,
  ConvergenceFailure,
  NoSolution,
  // Input files.
  ParseError,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

/// True for the codes produced by model validation.
bool is_validation_error(ErrorCode code);

class ChainError : public std::runtime_error {
 public:
  ChainError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hangchain
