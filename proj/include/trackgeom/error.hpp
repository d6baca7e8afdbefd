#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trackgeom {

enum class ErrorCode {
  invalid_argument,
  gap_too_large,
  too_short,
  no_valid_speed,
  alignment_failed,
  insufficient_data,
  undefined_correlation,
  no_overlap,
  plan_too_short,
  missing_channel,
  parse_error,
  io_error,
  internal,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable failure category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::invalid_argument, what);
}

}  // namespace trackgeom
