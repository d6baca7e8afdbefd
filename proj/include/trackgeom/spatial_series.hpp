#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace trackgeom {

inline constexpr double kDefaultSpacingM = 0.25;

/// Signal sampled uniformly in distance. Invalid samples keep their slot
/// (value 0) and are excluded by every consumer.
struct SpatialSeries {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
  double spacing_m = kDefaultSpacingM;
  double start_m = 0.0;
  std::string channel_id;
  std::string units;

  std::size_t size() const noexcept { return values.size(); }
  double position(std::size_t i) const noexcept { return start_m + static_cast<double>(i) * spacing_m; }
  bool is_valid(std::size_t i) const noexcept { return valid.empty() || valid[i] != 0; }
  std::size_t valid_count() const noexcept;

  /// All-valid series from plain values.
  static SpatialSeries dense(std::vector<double> values, double spacing_m, double start_m, std::string channel_id = {},
                             std::string units = {});
};

}  // namespace trackgeom
