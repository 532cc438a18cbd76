#pragma once

#include <stdexcept>
#include <string>

namespace crossnet {

// Out-of-range or inconsistent input parameters (graph sizes, K, p, tolerances, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solver failures: non-convergence, step-size underflow, non-finite state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed config files or unknown keys.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossnet
