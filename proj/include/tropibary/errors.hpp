#pragma once

#include <stdexcept>
#include <string>

namespace tropibary {

// Base for everything this library throws.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad scalars, normalization violations,
// dimension mismatches, unparseable documents. CLI maps this to exit code 2.
struct invalid_input : error {
  using error::error;
};

}  // namespace tropibary
