#include "trackgeom/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "trackgeom/error.hpp"

namespace trackgeom {
namespace {

std::string units_of(SignalKind kind) {
  switch (kind) {
    case SignalKind::acceleration: return "m/s^2";
    case SignalKind::displacement: return "m";
    case SignalKind::speed: return "m/s";
  }
  return {};
}

// Tolerance for grid snapping, as a fraction of the spacing.
constexpr double kGridEps = 1e-9;

}  // namespace

std::size_t SpatialSeries::valid_count() const noexcept {
  if (valid.empty()) return values.size();
  return static_cast<std::size_t>(std::count_if(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; }));
}

SpatialSeries SpatialSeries::dense(std::vector<double> values, double spacing_m, double start_m, std::string channel_id,
                                   std::string units) {
  SpatialSeries s;
  s.valid.assign(values.size(), 1);
  s.values = std::move(values);
  s.spacing_m = spacing_m;
  s.start_m = start_m;
  s.channel_id = std::move(channel_id);
  s.units = std::move(units);
  return s;
}

DistanceAxis build_distance_axis(std::span<const double> speeds_mps, double sample_rate_hz, double x0_m) {
  require(!speeds_mps.empty(), "build_distance_axis: empty speed profile");
  require(sample_rate_hz > 0.0, "build_distance_axis: sample rate must be positive");
  require(std::isfinite(x0_m), "build_distance_axis: origin must be finite");
  DistanceAxis axis;
  axis.origin_m = x0_m;
  axis.sample_rate_hz = sample_rate_hz;
  axis.positions_m.resize(speeds_mps.size());
  const double dt = 1.0 / sample_rate_hz;
  double travelled = 0.0;
  for (std::size_t n = 0; n < speeds_mps.size(); ++n) {
    const double v = speeds_mps[n];
    require(std::isfinite(v), "build_distance_axis: non-finite speed at sample " + std::to_string(n));
    require(v >= 0.0, "build_distance_axis: negative speed at sample " + std::to_string(n) +
                          " (reverse running is not supported)");
    axis.positions_m[n] = x0_m + travelled;
    travelled += v * dt;
  }
  return axis;
}

DistanceAxis build_distance_axis(const SpeedProfile& speed, double x0_m) {
  return build_distance_axis(speed.speeds_mps, speed.sample_rate_hz, x0_m);
}

SpatialSeries interpolate_to_grid(std::span<const double> values, std::span<const double> positions, double spacing_m) {
  require(spacing_m > 0.0, "resample: spacing must be positive");
  require(values.size() == positions.size(), "resample: axis length does not match signal length");
  require(!values.empty(), "resample: empty input");
  for (std::size_t n = 1; n < positions.size(); ++n) {
    require(positions[n] >= positions[n - 1], "resample: distance axis decreases at sample " + std::to_string(n));
  }
  const double lo = positions.front();
  const double hi = positions.back();
  if (hi - lo < spacing_m) {
    fail(ErrorCode::too_short, "resample: travelled distance " + std::to_string(hi - lo) + " m is below one spacing");
  }
  const auto k_first = static_cast<long long>(std::ceil(lo / spacing_m - kGridEps));
  const auto k_last = static_cast<long long>(std::floor(hi / spacing_m + kGridEps));
  const auto count = static_cast<std::size_t>(k_last - k_first + 1);

  SpatialSeries out;
  out.spacing_m = spacing_m;
  out.start_m = static_cast<double>(k_first) * spacing_m;
  out.values.resize(count);
  out.valid.assign(count, 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double g = std::clamp(static_cast<double>(k_first + static_cast<long long>(i)) * spacing_m, lo, hi);
    while (j < positions.size() && positions[j] < g) ++j;
    if (j == positions.size()) {
      out.values[i] = values.back();
    } else if (positions[j] == g || j == 0) {
      out.values[i] = values[j];
    } else {
      const double u = (g - positions[j - 1]) / (positions[j] - positions[j - 1]);
      out.values[i] = values[j - 1] + u * (values[j] - values[j - 1]);
    }
  }
  return out;
}

SpatialSeries resample_to_space(const TimeSeries& ts, const DistanceAxis& axis, double spacing_m,
                                const StationaryRule& stationary) {
  require(axis.size() == ts.size(), "resample_to_space: axis length does not match signal length");
  SpatialSeries out = interpolate_to_grid(ts.samples(), axis.positions_m, spacing_m);
  out.channel_id = ts.channel_id();
  out.units = units_of(ts.kind());

  const double fs = axis.sample_rate_hz > 0.0 ? axis.sample_rate_hz : ts.sample_rate_hz();
  const auto& pos = axis.positions_m;
  const auto min_run = static_cast<std::size_t>(std::floor(stationary.min_duration_s * fs));
  std::size_t n = 0;
  while (n + 1 < pos.size()) {
    if ((pos[n + 1] - pos[n]) * fs >= stationary.min_speed_mps) {
      ++n;
      continue;
    }
    std::size_t end = n;
    while (end + 1 < pos.size() && (pos[end + 1] - pos[end]) * fs < stationary.min_speed_mps) ++end;
    // Slow steps n..end-1 span positions pos[n]..pos[end].
    if (end - n > min_run) {
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double g = out.position(i);
        if (g >= pos[n] - kGridEps * spacing_m && g <= pos[end] + kGridEps * spacing_m) out.valid[i] = 0;
      }
    }
    n = end;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out.valid[i]) out.values[i] = 0.0;
  }
  return out;
}

}  // namespace trackgeom
