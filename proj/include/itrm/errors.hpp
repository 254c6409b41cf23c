#pragma once

#include <stdexcept>
#include <string>

namespace itrm {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ITRM_DEFINE_ERROR(Name)             \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// ordinal_cnf
ITRM_DEFINE_ERROR(UnderflowError);
ITRM_DEFINE_ERROR(DepthLimitError);
ITRM_DEFINE_ERROR(BaseNotClosedError);
ITRM_DEFINE_ERROR(InvalidDigitsError);
ITRM_DEFINE_ERROR(MalformedDescriptorError);
ITRM_DEFINE_ERROR(ArgumentOutOfRangeError);

// machine
ITRM_DEFINE_ERROR(InvariantViolationError);
ITRM_DEFINE_ERROR(UndecidedError);
ITRM_DEFINE_ERROR(OutputNotBitError);
ITRM_DEFINE_ERROR(ValidationError);

// limit_accelerator
ITRM_DEFINE_ERROR(StaleCertificateError);

// iteration_engine
ITRM_DEFINE_ERROR(RecursionDepthError);
ITRM_DEFINE_ERROR(ClosureError);
ITRM_DEFINE_ERROR(RangeError);
ITRM_DEFINE_ERROR(EncodingCorruptionError);

// operators
ITRM_DEFINE_ERROR(DecodeError);

#undef ITRM_DEFINE_ERROR

// Parse failures carry the 1-based position of the offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace itrm
