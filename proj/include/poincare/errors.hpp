#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or input (CLI exit code 2).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Numerical failure in a floating-point kernel (CLI exit code 3).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A computed result violates a structural invariant (CLI exit code 4).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

class CholeskyFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ResidualTooLarge : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateDirection : public Error {
public:
  using Error::Error;
};

class DegenerateQuadric : public Error {
public:
  using Error::Error;
};

class NonUniqueInvariant : public InvariantViolation {
public:
  using InvariantViolation::InvariantViolation;
};

class CharacteristicDirection : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class GlancingReflection : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoForwardIntersection : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace poincare
