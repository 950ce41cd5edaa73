#pragma once

#include <stdexcept>
#include <string>

namespace mimogan {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape contract violated (matrix products, frame sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// NaN or Inf produced where finite values are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Operation called in the wrong lifecycle state.
class StateError : public Error {
 public:
  using Error::Error;
};

// Argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bit/feature counts that cannot be framed into symbols or pairs.
class FramingError : public Error {
 public:
  using Error::Error;
};

// Normalization scales cannot be fitted (zero-max feature).
class FitError : public Error {
 public:
  using Error::Error;
};

// Not enough pilot pairs to build a train/validation split.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Invalid experiment configuration; the message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed checkpoint or CSV input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace mimogan
