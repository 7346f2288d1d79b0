#include "pancha/error.hpp"

namespace pancha {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OrthogonalStates: return "OrthogonalStates";
    case ErrorCode::VanishingTrace: return "VanishingTrace";
    case ErrorCode::VanishingEndpointOverlap: return "VanishingEndpointOverlap";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::AntipodalEndpoints: return "AntipodalEndpoints";
    case ErrorCode::ZeroAxis: return "ZeroAxis";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::BasisMisaligned: return "BasisMisaligned";
    case ErrorCode::UndefinedRatio: return "UndefinedRatio";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MultipleSweptParameters: return "MultipleSweptParameters";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_domain_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrthogonalStates:
    case ErrorCode::VanishingTrace:
    case ErrorCode::VanishingEndpointOverlap:
    case ErrorCode::IllConditioned:
    case ErrorCode::DecompositionFailure:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::AntipodalPoints:
    case ErrorCode::AntipodalEndpoints:
    case ErrorCode::ZeroAxis:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::BranchAmbiguity:
    case ErrorCode::BasisMisaligned:
    case ErrorCode::UndefinedRatio:
      return true;
    default:
      return false;
  }
}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace pancha
