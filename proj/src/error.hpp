#pragma once

#include <stdexcept>
#include <string>

namespace pdmpsync {

enum class ErrorCode {
  InvalidArgument,
  InvalidRate,
  NotIrreducible,
  AbsorbingState,
  RankDeficient,
  NotPositiveSemidefinite,
  NotMeanZero,
  GridMismatch,
  NoAttractingCycle,
  ConvergedToEquilibrium,
  AdjointInconsistent,
  NotInBasin,
  DomainEscape,
  FieldBlowup,
  OriginSingularity,
  QssExponentPositive,
  NoAveragedCycle,
  DriveNotNormalized,
  FitFailure,
  ParseError,
  Io,
};

/// Domain error carrying a machine-readable code. Simulation escapes also
/// carry the time at which the trajectory left the admissible region.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, double when)
      : std::runtime_error(message), code_(code), when_(when) {}

  ErrorCode code() const { return code_; }
  double when() const { return when_; }

 private:
  ErrorCode code_;
  double when_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace pdmpsync
