#pragma once

#include <stdexcept>
#include <string>

namespace agent_thermo {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distribution, kernel or machine failed its construction invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Mismatched index sets or non-product joint shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A Gram kernel violated PSD/range constraints beyond tolerance.
class KernelError : public Error {
 public:
  using Error::Error;
};

// Reducible or periodic induced chain, or other structural defects.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Iterative solver hit its cap with the residual still too large.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// Enumeration or DP budget exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the formula's domain of validity.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation's precondition (e.g. minimality) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace agent_thermo
