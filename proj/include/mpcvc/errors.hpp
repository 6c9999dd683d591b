#pragma once

#include <stdexcept>
#include <string>

namespace mpcvc {

// Invalid argument to a library operation (bad probability, id out of range, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A simulated machine would exceed its memory budget.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mpcvc
