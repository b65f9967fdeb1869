#pragma once

#include <stdexcept>
#include <string>

namespace mpcp {

// Bad data, bad configuration, unreadable files. CLI maps this to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration blow-ups: NaN/Inf states, broken monotonicity, power iteration
// that never settles. CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mpcp
