#pragma once

#include <stdexcept>
#include <string>

namespace kickmix {

// Invalid or inconsistent input (sector specs, parameters, run configs).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A sector or matrix would exceed the configured size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver failure or a violated numerical guard (e.g. non-unit eigenvalues).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kickmix
