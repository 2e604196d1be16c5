#include "isodescent/error.hpp"

namespace isodescent {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::InvalidField: return "INVALID_FIELD";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::SingularMatrix: return "SINGULAR_MATRIX";
    case ErrorCode::BalanceViolation: return "BALANCE_VIOLATION";
    case ErrorCode::InternalInvariant: return "INTERNAL_INVARIANT";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::GenerationFailed: return "GENERATION_FAILED";
  }
  return "UNKNOWN";
}

}  // namespace isodescent
