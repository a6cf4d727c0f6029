#pragma once

#include <stdexcept>
#include <string>

namespace adsgeom {

enum class ErrorCode {
  InvalidIsometry,
  NotOnQuadric,
  DegeneratePlane,
  BadTangent,
  OutsideDomain,
  OutsideAffineDomain,
  InvalidSurface,
  RescaleImpossible,
  DegenerateCloud,
  FlatCurve,
  NotSpacelike,
  EpsTooLarge,
  EpsBudgetExceeded,
  DeltaTooCoarse,
  NotConvexInput,
  NotSpacelikeHere,
  PipelineFailed,
  NotInU,
  DegenerateLattice,
  Diverged,
  NotConverged,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library. `stage` names the pipeline step
// for errors that surface through build_barriers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string stage = {})
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace adsgeom
