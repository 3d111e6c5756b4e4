#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shellres {

enum class ErrorCode {
  InvalidInput,
  OrderedRadii,
  DegenerateMatch,
  PoleAtInput,
  NotAPole,
  BoundaryZero,
  NonConvergence,
  PairingViolation,
  J3Vanishes,
  ContourTooClose,
  EnclosedPoleMismatch,
  AlphaNegative,
  NonMonotone,
  ArityTooSmall,
  ConfigError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::OrderedRadii: return "OrderedRadii";
    case ErrorCode::DegenerateMatch: return "DegenerateMatch";
    case ErrorCode::PoleAtInput: return "PoleAtInput";
    case ErrorCode::NotAPole: return "NotAPole";
    case ErrorCode::BoundaryZero: return "BoundaryZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PairingViolation: return "PairingViolation";
    case ErrorCode::J3Vanishes: return "J3Vanishes";
    case ErrorCode::ContourTooClose: return "ContourTooClose";
    case ErrorCode::EnclosedPoleMismatch: return "EnclosedPoleMismatch";
    case ErrorCode::AlphaNegative: return "AlphaNegative";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::ArityTooSmall: return "ArityTooSmall";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shellres
