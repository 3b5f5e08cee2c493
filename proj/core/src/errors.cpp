#include "dbscale/errors.hpp"

namespace dbscale {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::RemovabilityViolation: return "RemovabilityViolation";
    case ErrorCode::EmptySampleSet: return "EmptySampleSet";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::SpectralPoint: return "SpectralPoint";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::EmptyDictionary: return "EmptyDictionary";
    case ErrorCode::IllConditioned: return "IllConditioned";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace dbscale
