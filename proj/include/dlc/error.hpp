#pragma once

#include <stdexcept>

namespace dlc {

// Bad input or usage: malformed files, invalid parameters, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: solver non-convergence, residual checks that do not hold.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlc
