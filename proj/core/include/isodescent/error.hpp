#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isodescent {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  InvalidField,
  ParseError,
  DimensionMismatch,
  SingularMatrix,
  BalanceViolation,
  InternalInvariant,
  InvalidInput,
  GenerationFailed,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. The
/// CLI maps codes to process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::ParseError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace isodescent
