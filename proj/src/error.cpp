#include "pisot/error.hpp"

namespace pisot {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPisot: return "NotPisot";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NegativeValue: return "NegativeValue";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NonFiniteExpansion: return "NonFiniteExpansion";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::DegreeOne: return "DegreeOne";
    case ErrorKind::AlphabetViolation: return "AlphabetViolation";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::SourceExhausted: return "SourceExhausted";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::StreamShort: return "StreamShort";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pisot
