#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trackgeom/spatial_series.hpp"

namespace trackgeom {

/// Distance-sampled table in the track-recording-car layout: one distance
/// column plus named value columns (speed_mps, VA10_left_mm, ...).
struct TrcTable {
  double start_m = 0.0;
  double spacing_m = kDefaultSpacingM;
  std::size_t rows = 0;
  std::vector<SpatialSeries> columns;
  /// Free-form metadata written as a JSON comment line.
  std::map<std::string, std::string> metadata;

  double distance(std::size_t i) const noexcept { return start_m + static_cast<double>(i) * spacing_m; }
  const SpatialSeries* find(const std::string& name) const;
  const SpatialSeries& at(const std::string& name) const;
  /// Adds a column; its grid must match the table grid (first column defines it).
  void add(SpatialSeries column);
};

/// Standard column order of the reference file.
const std::vector<std::string>& standard_trc_columns();

}  // namespace trackgeom
