#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairmax {

// Invalid configuration value, flag, or argument.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable input or data that violates a dataset invariant.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite loss or parameters; carries the iteration that produced them.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration(iteration) {}
  std::size_t iteration = 0;
};

}  // namespace fairmax
