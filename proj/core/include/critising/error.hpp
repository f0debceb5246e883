#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critising {

enum class ErrorCode {
  kMalformedInput,
  kDuplicateEdge,
  kSelfLoop,
  kVertexOutOfRange,
  kInfeasible,
  kGenerationFailed,
  kTooLarge,
  kBudgetExceeded,
  kLengthMismatch,
  kPrecondition,
  kDomain,
  kOverflow,
  kNotSymmetric,
  kNoConvergence,
  kVerificationFailed,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every domain failure in the library is reported through this type; the
// code distinguishes failure classes so callers (and the CLI) can react.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace critising
