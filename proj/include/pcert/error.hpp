#pragma once

#include <stdexcept>
#include <string>

namespace pcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PCERT_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

PCERT_DEFINE_ERROR(InvalidParameter);
PCERT_DEFINE_ERROR(NonUnitConstantTerm);
PCERT_DEFINE_ERROR(ModulusMismatch);
PCERT_DEFINE_ERROR(IndexOutOfRange);
PCERT_DEFINE_ERROR(InvalidWindow);
PCERT_DEFINE_ERROR(NoPeriodFound);
PCERT_DEFINE_ERROR(EmptyMultiset);
PCERT_DEFINE_ERROR(RuleValidationFailed);
PCERT_DEFINE_ERROR(SplitFailed);
PCERT_DEFINE_ERROR(CertificateFailed);
PCERT_DEFINE_ERROR(SpaceTooLarge);
PCERT_DEFINE_ERROR(ComplexityGuard);
PCERT_DEFINE_ERROR(SemanticError);
PCERT_DEFINE_ERROR(UsageError);

#undef PCERT_DEFINE_ERROR

/// Malformed instance text; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace pcert
