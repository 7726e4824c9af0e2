#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

enum class ErrCode {
  Syntax,
  Ref,
  Struct,
  NotSimpleCycle,
  Spec,
  SelfCross,
  NotDoubleCrossing,
  NotAdjacentCrossing,
  NotTangled,
  BoundaryBlocked,
  DisjointnessViolated,
  BoundaryMissing,
  NotInjective,
  NotIncident,
  NoPerfectMatching,
  ProgressStalled,
  NoMatching,
  SelectionConflict,
  RoleError,
  SweepBlocked,
  LoopGuard,
  VerificationFailed,
  InfeasibleParams,
  LayoutFailure,
  Internal,
};

const char* err_name(ErrCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrCode code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace qpr
