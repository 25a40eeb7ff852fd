#pragma once

#include <stdexcept>
#include <string>

namespace heegner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an operation: nonpositive rational to Gamma, zero digits, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside every supported evaluation regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Point not in the requested region, or outside a precondition set.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole (E6(i) = 0 for s2, E4(rho) = 0 for J').
class PoleError : public Error {
 public:
  using Error::Error;
};

// Two independent formulas for the same quantity disagree.
class ConsistencyFault : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace heegner
