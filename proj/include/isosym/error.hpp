#pragma once

#include <stdexcept>
#include <string>

namespace isosym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A required integral diverges (non-integrable head or tail).
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

/// A Signed profile was passed where a Nonincreasing one is required.
class KindError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Oscillation of an unbounded function was requested.
class OscillationError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace isosym
