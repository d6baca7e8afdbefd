#include "trackgeom/error.hpp"

namespace trackgeom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::gap_too_large: return "gap-too-large";
    case ErrorCode::too_short: return "too-short";
    case ErrorCode::no_valid_speed: return "no-valid-speed";
    case ErrorCode::alignment_failed: return "alignment-failed";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::undefined_correlation: return "undefined-correlation";
    case ErrorCode::no_overlap: return "no-overlap";
    case ErrorCode::plan_too_short: return "plan-too-short";
    case ErrorCode::missing_channel: return "missing-channel";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace trackgeom
