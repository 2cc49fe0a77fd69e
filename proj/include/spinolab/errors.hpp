#pragma once

#include <stdexcept>
#include <string>

namespace spinolab {

// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a construction that must succeed does not (e.g. a solution
// space of the wrong dimension).
class StructuralFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace spinolab
