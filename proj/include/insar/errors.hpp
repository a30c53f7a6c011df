#pragma once

#include <stdexcept>
#include <string>

namespace insar {

// Base of every error the library throws. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated: zero dimensions, odd sizes, mismatched shapes, ...
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A value outside its permitted domain (e.g. a phase channel outside [-1, 1)).
class RangeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed CTEN content.
class FormatError : public Error {
 public:
  using Error::Error;
};

class BadMagicError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

class UnsupportedDtypeError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Chain configuration text could not be parsed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace insar
