#pragma once

#include <stdexcept>
#include <string>

namespace tbma {

/// Raised when a SystemConfig (or an argument derived from one) is invalid.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for configurations the model does not define, e.g. cloud
/// processing with K != 2.
class UnsupportedConfiguration : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a covariance blend is not positive definite or a solver
/// cannot bracket its root.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tbma
