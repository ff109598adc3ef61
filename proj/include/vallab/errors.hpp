#pragma once

#include <stdexcept>
#include <string>

namespace vallab {

// Base of every library exception. The CLI maps PrecisionError to exit code 2
// and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A violated precondition (parameter validation, rank mismatch, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Working precision cannot decide a value (the Indeterminate outcome) or a
// precision budget is insufficient.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Operation outside the supported representation (e.g. a division the
// coefficient ring cannot express).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// adjoin_root outcomes that are not extension steps.
class NotSingleSlope : public Error {
 public:
  using Error::Error;
};

class NoStepDetected : public Error {
 public:
  using Error::Error;
};

// A construction produced data that contradicts its verified invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vallab
