#pragma once

#include <stdexcept>
#include <string>

namespace translab {

/// Raised when a curvature tuple leaves the domain cone of a speed, or an
/// argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A finite-difference stencil would step outside the cone.
class BoundaryProximityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Speed cannot be normalized or is otherwise unusable.
class InvalidSpeedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside an iterative solver (root bracketing, step
/// underflow, eigen-solve). Carries the last valid independent variable.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double last_valid)
      : std::runtime_error(what), last_valid_(last_valid) {}
  double last_valid() const noexcept { return last_valid_; }

 private:
  double last_valid_;
};

class StiffnessError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Random sampling produced no usable point.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace translab
