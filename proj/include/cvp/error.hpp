#pragma once

#include <stdexcept>
#include <string>

namespace cvp {

enum class ErrorCode {
  NotSymmetric,
  NegativeEntry,
  NonpositiveDiagonal,
  DimensionMismatch,
  InvalidSpace,
  NegativePotential,
  NegativeMeasure,
  NonpositiveS,
  NonpositiveLambda,
  TooManyPoints,
  NuZero,
  NuNotInK,
  NotAdmissible,
  SingularSupportMatrix,
  DoesNotEncloseInitialData,
  NoDependentSet,
  NoGerms,
  COutOfRange,
  InvalidDiscretization,
  ParseError,
  NumericalFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the problem-file reader; carries the position of the bad token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string field, const std::string& what)
      : Error(ErrorCode::ParseError, what),
        line_(line), column_(column), field_(std::move(field)) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  int column_;
  std::string field_;
};

}  // namespace cvp
