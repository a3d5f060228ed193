#pragma once

#include <stdexcept>
#include <string>

namespace twoatom {

// Invalid physical input: bad geometry, out-of-range rates, malformed states.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed scenario files or command-line values.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base class for failures of the numerical machinery itself.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The closed-form solution has a (Gamma - Gamma12) denominator that vanishes
// at the Dicke point; raised instead of returning inf/nan.
class DickeSingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Adaptive integrator could not meet its tolerance within the step budget.
class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EigenSolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace twoatom
