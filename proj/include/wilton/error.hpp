#pragma once

#include <stdexcept>
#include <string>

namespace wilton {

enum class ErrorCode {
  InvalidArgument,
  ModeMismatch,
  NotInRange,
  NearResonance,
  DegenerateBranch,
  ModeUnsupported,
  InconclusiveOrder,
  FailedOrder,
  Diverged,
  SingularSystem,
  BranchLost,
  ResonantBeta,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ModeMismatch: return "scalar mode mismatch";
    case ErrorCode::NotInRange: return "not in range";
    case ErrorCode::NearResonance: return "near resonance";
    case ErrorCode::DegenerateBranch: return "degenerate branch";
    case ErrorCode::ModeUnsupported: return "scalar mode unsupported";
    case ErrorCode::InconclusiveOrder: return "inconclusive order";
    case ErrorCode::FailedOrder: return "failed order";
    case ErrorCode::Diverged: return "diverged";
    case ErrorCode::SingularSystem: return "singular system";
    case ErrorCode::BranchLost: return "branch lost";
    case ErrorCode::ResonantBeta: return "resonant beta";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown";
}

}  // namespace wilton
