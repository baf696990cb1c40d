#include "permrow/errors.hpp"

namespace permrow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::DegenerateRegressor: return "DegenerateRegressor";
    case ErrorCode::InsufficientColumns: return "InsufficientColumns";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateSampleId: return "DuplicateSampleId";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::UncenteredEta: return "UncenteredEta";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical_degeneracy(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroMatrix:
    case ErrorCode::DegenerateRegressor:
    case ErrorCode::DegenerateVariance:
    case ErrorCode::ZeroSignal:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace permrow
