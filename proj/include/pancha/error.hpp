#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pancha {

// Every failure the library can report. The names double as the diagnostic
// tokens printed by the command line tool.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  OrthogonalStates,
  VanishingTrace,
  VanishingEndpointOverlap,
  IllConditioned,
  DecompositionFailure,
  DegenerateTriangle,
  AntipodalPoints,
  AntipodalEndpoints,
  ZeroAxis,
  DegenerateSpectrum,
  BranchAmbiguity,
  BasisMisaligned,
  UndefinedRatio,
  ConfigError,
  MultipleSweptParameters,
  IoError,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for errors caused by the physics (a phase that does not exist), as
// opposed to malformed input.
bool is_domain_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace pancha
