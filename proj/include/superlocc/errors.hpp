#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superlocc {

enum class ErrorKind {
  EmptyInput,
  NegativeEntry,
  ZeroSum,
  NonFinite,
  InvalidState,
  DimensionMismatch,
  FormMismatch,
  InvalidWeights,
  VanishingSuperposition,
  InvalidParameter,
  PreconditionViolated,
  Malformed,
};

std::string_view to_string(ErrorKind kind);

// Raised for anything the caller can fix by changing the input.
class InputError : public std::invalid_argument {
 public:
  InputError(ErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when an algorithm fails on valid input (e.g. no convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace superlocc
