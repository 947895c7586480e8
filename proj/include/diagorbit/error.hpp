#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diagorbit {

enum class ErrorCode {
  kInvalidInput,
  kNotSquarefree,
  kRationalRootFound,
  kDivisionByZeroElement,
  kPrecisionExhausted,
  kSingularBasis,
  kDimensionTooLarge,
  kEnumerationLimit,
  kDependentBasis,
  kShapeViolation,
  kBadIndex,
  kDimensionMismatch,
  kDeterminantViolation,
  kDiagonalSubalgebra,
  kUncertifiedInput,
  kToleranceAmbiguous,
  kBoundViolated,
  kNotInSOrbit,
  kPreconditionViolated,
};

std::string_view error_name(ErrorCode code) noexcept;

// Precision-type failures: raising the working precision may resolve them.
bool is_precision_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace diagorbit
