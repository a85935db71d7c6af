#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace natspec {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not match (e.g. multiplying 3x3 by 4x4).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input text could not be parsed. `position` is a 1-based character offset
// (0 when the error is not tied to a position).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : Error(position ? what + " at position " + std::to_string(position) : what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A mathematical precondition does not hold (disconnected graph where a
// connected one is required, value outside a projection set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace natspec
