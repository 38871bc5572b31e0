#include "f2reg/error.hpp"

namespace f2reg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMapDoesNotCarryBasis: return "MapDoesNotCarryBasis";
    case ErrorCode::kNotAComplement: return "NotAComplement";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kDyadicOverflow: return "DyadicOverflow";
    case ErrorCode::kDegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kZeroGamma: return "ZeroGamma";
    case ErrorCode::kNoCollisionWithinBudget: return "NoCollisionWithinBudget";
    case ErrorCode::kEvenN: return "EvenN";
    case ErrorCode::kInconsistentConstraints: return "InconsistentConstraints";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace f2reg
