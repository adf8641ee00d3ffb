#pragma once

#include <stdexcept>
#include <string>

namespace savanna {

/// Base class for all library failures.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter or configuration value violates a model invariant.
class ValidationError : public ModelError {
public:
  explicit ValidationError(const std::string& what) : ModelError(what) {}
};

/// Input outside the mathematical domain of an operation.
class DomainError : public ModelError {
public:
  explicit DomainError(const std::string& what) : ModelError(what) {}
};

/// A requested equilibrium/orbit does not exist; carries the violated threshold name.
class ExistenceError : public ModelError {
public:
  ExistenceError(const std::string& threshold, const std::string& what)
      : ModelError(what), threshold_(threshold) {}
  const std::string& threshold() const { return threshold_; }

private:
  std::string threshold_;
};

/// Sign structure of a bracketed root search was violated.
class BracketError : public ModelError {
public:
  explicit BracketError(const std::string& what) : ModelError(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public ModelError {
public:
  explicit QuadratureError(const std::string& what) : ModelError(what) {}
};

/// A time step was rejected (denominator positivity lost, only possible for
/// facilitation gamma_TG < 0 with very large dt).
class StepSizeError : public ModelError {
public:
  explicit StepSizeError(const std::string& what) : ModelError(what) {}
};

}  // namespace savanna
