#pragma once

#include <stdexcept>
#include <string>

namespace kwise {

// Base of every error raised by the library. The CLI maps each subclass to
// an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is out of range or inconsistent with another parameter.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A size guard refused to run an exponential computation.
class ResourceGuard : public Error {
 public:
  using Error::Error;
};

// The caller broke an operation precondition (e.g. handed a family that is
// not k-wise intersecting to an operation that requires one).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A computation contradicted one of the lemmas or theorems being checked.
class LemmaViolation : public Error {
 public:
  using Error::Error;
};

class NumericFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace kwise
