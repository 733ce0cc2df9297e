#pragma once

#include <stdexcept>
#include <string>

namespace levdun {

// Input/validation problems. The CLI maps these to exit code 2.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SchemaError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class ParseError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A group that cannot survive the requested transformation.
class DegenerateGroupError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Too few observations for the residual degrees of freedom to be positive.
class InsufficientDataError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Numeric failures during computation. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero pooled standard deviation: t statistics are undefined.
class DegenerateFitError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace levdun
