#pragma once

#include <stdexcept>
#include <string>

namespace vmf {

// Base for every error raised by the library. The C API maps the two
// branches below onto distinct status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed files, violated preconditions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Singular systems, marginal stability, failed decompositions.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vmf
