#pragma once

#include <stdexcept>

namespace bellsim {

/// Input violates a documented precondition. The CLI maps this to exit code 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// File-system failure (missing input, unwritable output). CLI exit code 1.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bellsim
