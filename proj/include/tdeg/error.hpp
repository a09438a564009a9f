#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdeg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A symbolic operation was asked to handle an exponential (evaluation-only) function.
class NotSymbolicError : public Error {
 public:
  using Error::Error;
};

/// A bit word does not have the shape 1 0^a 1 0^b ...
class MalformedStreamError : public Error {
 public:
  using Error::Error;
};

/// A block function produced a negative block size.
class NegativeBlockError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at position " + std::to_string(position) + ": " + message), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tdeg
