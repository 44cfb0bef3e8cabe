#include "hyperforge/error.hpp"

namespace hyperforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfIncidence: return "SelfIncidence";
    case ErrorCode::kSameTypeIncidence: return "SameTypeIncidence";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kEmptyType: return "EmptyType";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNotAFlag: return "NotAFlag";
    case ErrorCode::kNotAGeometry: return "NotAGeometry";
    case ErrorCode::kSizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::kNotAnAction: return "NotAnAction";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kIncompleteTable: return "IncompleteTable";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kNotAClass: return "NotAClass";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kNotPConstructed: return "NotPConstructed";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kUnsupportedCase: return "UnsupportedCase";
    case ErrorCode::kPropertyViolation: return "PropertyViolation";
  }
  return "Unknown";
}

const char* to_string(Precondition p) {
  switch (p) {
    case Precondition::kB1: return "B1";
    case Precondition::kB2: return "B2";
    case Precondition::kBipartite: return "Bipartite";
    case Precondition::kNotBipartite: return "NotBipartite";
    case Precondition::kNotResiduallyConnected: return "NotRC";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

PreconditionError::PreconditionError(Precondition p, const std::string& what)
    : Error(ErrorCode::kPreconditionFailed, std::string(to_string(p)) + ": " + what),
      precondition_(p) {}

}  // namespace hyperforge
