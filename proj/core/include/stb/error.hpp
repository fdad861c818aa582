#pragma once

#include <stdexcept>
#include <string>

namespace stb {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed image file.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class WriteError : public Error {
 public:
  using Error::Error;
};

// Image or field dimensions do not satisfy an operation's precondition.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// A numeric invariant was violated (e.g. a non-PSD tensor). Indicates a bug
// upstream rather than bad user input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace stb
