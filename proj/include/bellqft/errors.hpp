#pragma once

#include <stdexcept>
#include <string>

namespace bellqft {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pointwise two-point function was evaluated exactly on the light cone.
class LightConeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature or sampling did not reach the requested accuracy.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Invalid user-supplied settings or configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace bellqft
