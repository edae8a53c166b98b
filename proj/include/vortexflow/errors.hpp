#pragma once

#include <stdexcept>
#include <string>

namespace vortexflow {

// Base of every error thrown by the library. The CLI maps ParameterDomainError
// and DomainError to exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model or command parameter lies outside its admissible range.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

// A function was called outside its mathematical domain (r <= 0, short intervals, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition on the data failed (e.g. trajectory does not start outside E <= 0).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A structural hypothesis on the vorticity function does not hold (no positive zero, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class NumericalToleranceError : public Error {
 public:
  using Error::Error;
};

class FixedPointFailure : public Error {
 public:
  using Error::Error;
};

class ContractionViolation : public Error {
 public:
  using Error::Error;
};

class InfeasibleConstants : public Error {
 public:
  using Error::Error;
};

class NotDifferentiable : public Error {
 public:
  using Error::Error;
};

class NoBracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace vortexflow
