#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permrow {

enum class ErrorCode {
  NonFiniteInput,
  ZeroMatrix,
  DegenerateRegressor,
  InsufficientColumns,
  LengthMismatch,
  DimensionMismatch,
  InvalidArgument,
  ParseError,
  DuplicateSampleId,
  DegenerateVariance,
  UncenteredEta,
  ZeroSignal,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Numerical degeneracies (as opposed to malformed input) map to a distinct
// CLI exit status.
bool is_numerical_degeneracy(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permrow
