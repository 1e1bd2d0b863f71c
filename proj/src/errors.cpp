#include "superlocc/errors.hpp"

namespace superlocc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::NegativeEntry: return "negative entry";
    case ErrorKind::ZeroSum: return "all-zero input";
    case ErrorKind::NonFinite: return "non-finite entry";
    case ErrorKind::InvalidState: return "invalid state";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::FormMismatch: return "form mismatch";
    case ErrorKind::InvalidWeights: return "invalid weights";
    case ErrorKind::VanishingSuperposition: return "vanishing superposition";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::PreconditionViolated: return "precondition violated";
    case ErrorKind::Malformed: return "malformed document";
  }
  return "unknown";
}

}  // namespace superlocc
