#include "mscs/error.hpp"

namespace mscs {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyVector: return "EmptyVector";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::InvalidStateSpace: return "InvalidStateSpace";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ExplosionLimit: return "ExplosionLimit";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidPMF: return "InvalidPMF";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mscs
