#pragma once

#include <stdexcept>
#include <string>

namespace orelp {

/// Raised for violated preconditions and malformed input across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input cannot be parsed (words grammar, JSON payloads).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace orelp
