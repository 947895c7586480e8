#include "diagorbit/error.hpp"

namespace diagorbit {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNotSquarefree: return "NotSquarefree";
    case ErrorCode::kRationalRootFound: return "RationalRootFound";
    case ErrorCode::kDivisionByZeroElement: return "DivisionByZeroElement";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kSingularBasis: return "SingularBasis";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kEnumerationLimit: return "EnumerationLimit";
    case ErrorCode::kDependentBasis: return "DependentBasis";
    case ErrorCode::kShapeViolation: return "ShapeViolation";
    case ErrorCode::kBadIndex: return "BadIndex";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDeterminantViolation: return "DeterminantViolation";
    case ErrorCode::kDiagonalSubalgebra: return "DiagonalSubalgebra";
    case ErrorCode::kUncertifiedInput: return "UncertifiedInput";
    case ErrorCode::kToleranceAmbiguous: return "ToleranceAmbiguous";
    case ErrorCode::kBoundViolated: return "BoundViolated";
    case ErrorCode::kNotInSOrbit: return "NotInSOrbit";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

bool is_precision_error(ErrorCode code) noexcept {
  return code == ErrorCode::kPrecisionExhausted || code == ErrorCode::kToleranceAmbiguous ||
         code == ErrorCode::kUncertifiedInput;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace diagorbit
