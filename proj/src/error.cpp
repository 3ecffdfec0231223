#include "hangchain/error.hpp"

namespace hangchain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewLinks: return "TooFewLinks";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::SpanTooShort: return "SpanTooShort";
    case ErrorCode::SpanTooLong: return "SpanTooLong";
    case ErrorCode::NonPositiveMu: return "NonPositiveMu";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::BracketingFailure: return "BracketingFailure";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewLinks:
    case ErrorCode::LengthMismatch:
    case ErrorCode::NonPositiveMass:
    case ErrorCode::NonPositiveLength:
    case ErrorCode::SpanTooShort:
    case ErrorCode::SpanTooLong:
      return true;
    default:
      return false;
  }
}

}  // namespace hangchain
