#pragma once

#include <stdexcept>
#include <string>

namespace rht {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RHT_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

// exact-linalg
RHT_DEFINE_ERROR(CompositionNonzero)
RHT_DEFINE_ERROR(DimensionMismatch)

// cdga-core
RHT_DEFINE_ERROR(UnknownGenerator)
RHT_DEFINE_ERROR(DifferentialSquareNonzero)
RHT_DEFINE_ERROR(DegreeRuleViolation)
RHT_DEFINE_ERROR(CutoffTooSmall)
RHT_DEFINE_ERROR(InvalidPresentation)

// sullivan
RHT_DEFINE_ERROR(NotConnected)
RHT_DEFINE_ERROR(UnsupportedDescriptor)

// hochschild / hodge
RHT_DEFINE_ERROR(NotSimplyConnected)
RHT_DEFINE_ERROR(BlockMissing)
RHT_DEFINE_ERROR(ArityTooLarge)
RHT_DEFINE_ERROR(ArityMismatch)
RHT_DEFINE_ERROR(ProjectionNotSubcomplex)

// mapping-space
RHT_DEFINE_ERROR(InvalidMorphism)
RHT_DEFINE_ERROR(NotMinimal)
RHT_DEFINE_ERROR(VerificationFailed)
RHT_DEFINE_ERROR(MismatchedExpectation)

// text formats
RHT_DEFINE_ERROR(ValidationError)

#undef RHT_DEFINE_ERROR

/// Syntax error in an algebra or map file, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace rht
