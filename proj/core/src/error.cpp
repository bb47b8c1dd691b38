#include "hiproof/error.hpp"

namespace hiproof {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_volume: return "invalid_volume";
    case ErrorCode::invalid_alpha: return "invalid_alpha";
    case ErrorCode::invalid_dimension: return "invalid_dimension";
    case ErrorCode::invalid_ratio: return "invalid_ratio";
    case ErrorCode::invalid_floor_area: return "invalid_floor_area";
    case ErrorCode::invalid_range: return "invalid_range";
    case ErrorCode::invalid_min_surface: return "invalid_min_surface";
    case ErrorCode::implausible_input: return "implausible_input";
    case ErrorCode::grid_too_large: return "grid_too_large";
    case ErrorCode::invalid_record: return "invalid_record";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::invalid_request: return "invalid_request";
    case ErrorCode::unknown_scenario: return "unknown_scenario";
    case ErrorCode::payload_too_large: return "payload_too_large";
  }
  return "unknown";
}

}  // namespace hiproof
