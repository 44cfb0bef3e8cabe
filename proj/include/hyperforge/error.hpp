#pragma once

#include <stdexcept>
#include <string>

namespace hyperforge {

enum class ErrorCode {
  kSelfIncidence,
  kSameTypeIncidence,
  kUnknownElement,
  kEmptyType,
  kInvalidInput,
  kNotAFlag,
  kNotAGeometry,
  kSizeLimitExceeded,
  kNotAnAction,
  kOverflow,
  kIncompleteTable,
  kDisconnected,
  kNotAClass,
  kPreconditionFailed,
  kNotPConstructed,
  kInvalidParams,
  kUnsupportedCase,
  kPropertyViolation,
};

/// Which precondition of a construction was violated.
enum class Precondition { kB1, kB2, kBipartite, kNotBipartite, kNotResiduallyConnected };

const char* to_string(ErrorCode code);
const char* to_string(Precondition p);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class PreconditionError : public Error {
 public:
  PreconditionError(Precondition p, const std::string& what);
  Precondition precondition() const noexcept { return precondition_; }

 private:
  Precondition precondition_;
};

}  // namespace hyperforge
