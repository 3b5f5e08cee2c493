#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dbscale {

enum class ErrorCode {
  InvalidArgument,
  OverflowGuard,
  RemovabilityViolation,
  EmptySampleSet,
  NonConvergence,
  StepTooCoarse,
  SpectralPoint,
  LevelMismatch,
  DegenerateDenominator,
  EmptyDictionary,
  IllConditioned,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dbscale
