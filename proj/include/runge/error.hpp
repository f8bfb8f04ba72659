#pragma once

#include <stdexcept>
#include <string>

namespace runge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input (malformed group, illegal cusp set, ...).
struct InputError : Error {
  using Error::Error;
};

// A truncated computation could not decide the answer; retry with more terms.
struct PrecisionError : Error {
  using Error::Error;
};

}  // namespace runge
