#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trackgeom/spatial_series.hpp"
#include "trackgeom/speed.hpp"
#include "trackgeom/time_series.hpp"

namespace trackgeom {

/// Track position of every time sample.
struct DistanceAxis {
  std::vector<double> positions_m;
  double origin_m = 0.0;
  double sample_rate_hz = 0.0;

  std::size_t size() const noexcept { return positions_m.size(); }
};

/// positions[n] = x0 + sum_{k<n} speed[k] / fs, so positions[0] is the
/// location at the start of the record.
DistanceAxis build_distance_axis(std::span<const double> speeds_mps, double sample_rate_hz, double x0_m);
DistanceAxis build_distance_axis(const SpeedProfile& speed, double x0_m);

struct StationaryRule {
  double min_speed_mps = 0.5;
  double min_duration_s = 1.0;
};

/// Linear interpolation of ts onto the grid k*spacing covering the axis.
/// Grid points inside stationary intervals are flagged invalid.
SpatialSeries resample_to_space(const TimeSeries& ts, const DistanceAxis& axis, double spacing_m = kDefaultSpacingM,
                                const StationaryRule& stationary = {});

/// Interpolation core shared with speed alignment: values given at
/// non-decreasing positions, returned on the covering grid without any
/// stationary masking.
SpatialSeries interpolate_to_grid(std::span<const double> values, std::span<const double> positions,
                                  double spacing_m);

}  // namespace trackgeom
