#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters handed to a constructor or operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation would have lost meaning at the configured p-adic precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// A size or degree cap was exceeded.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

// An asymptotic estimate did not land within rounding tolerance of an integer.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// The power series has a characteristic-zero special divisor, which the
// root-of-unity sum cannot see.
class SpecialDivisorError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace iwasawa
