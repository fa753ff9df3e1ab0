#pragma once

#include <stdexcept>
#include <string>

namespace fqco {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A coefficient could not be brought to an integer by a rational multiplier.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InfeasibleConstraintError : public Error {
 public:
  using Error::Error;
};

/// Squaring a polynomial with a quadratic part would leave the quadratic class.
class DegreeOverflowError : public Error {
 public:
  using Error::Error;
};

class NotDiagonalError : public Error {
 public:
  using Error::Error;
};

class NonHermitianError : public Error {
 public:
  using Error::Error;
};

/// Requested qubit count exceeds the configured memory cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range user input (files, flags, arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input document that failed to parse; the message carries the position.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical breakdown inside a feedback run; carries the offending layer.
class EngineError : public Error {
 public:
  EngineError(std::size_t layer, const std::string& what)
      : Error("layer " + std::to_string(layer) + ": " + what), layer_(layer) {}

  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

}  // namespace fqco
