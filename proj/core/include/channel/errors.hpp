#pragma once

#include <stdexcept>
#include <string>

namespace channel {

/// Invalid user input: bad parameters, malformed configuration or files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge (eigensolver, truncation policy).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace channel
