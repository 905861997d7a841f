#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selfsep {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input is not a valid mathematical object (not a bijection, bad field size...).
class StructuralError : public Error {
public:
  using Error::Error;
};

// Valid object, but an operation's precondition does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Degree, order or time limit exceeded.
class CapacityError : public Error {
public:
  using Error::Error;
};

class UnsupportedError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

} // namespace selfsep
