#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trackgeom/spatial_series.hpp"
#include "trackgeom/time_series.hpp"

namespace trackgeom {

inline constexpr double kDefaultWheelbaseM = 2.5;
inline constexpr std::size_t kDefaultDelayWindow = 960;

/// Delay search interval in seconds. The default corresponds to speeds of
/// 1..40 m/s over the default wheelbase.
struct DelayBounds {
  double min_s = kDefaultWheelbaseM / 40.0;
  double max_s = kDefaultWheelbaseM / 1.0;
};

struct DelayOptions {
  std::size_t window = kDefaultDelayWindow;
  DelayBounds bounds{};
  /// Evaluation stride in samples; 0 selects window / 4.
  std::size_t stride = 0;
  double min_quality = 0.3;
};

struct DelayEstimate {
  std::vector<double> delays_s;
  std::vector<double> peak_quality;
  std::vector<std::uint8_t> valid;
  std::size_t window_samples = 0;
  double sample_rate_hz = 0.0;
  double start_time_s = 0.0;
  DelayBounds bounds{};

  std::size_t size() const noexcept { return delays_s.size(); }
  std::size_t valid_count() const noexcept;
};

/// Windowed cross-correlation delay of back relative to front, evaluated
/// every stride samples and linearly interpolated to every sample.
DelayEstimate estimate_delay(const TimeSeries& front, const TimeSeries& back, const DelayOptions& options = {});

struct SpeedOptions {
  /// Median filter length in seconds; 0 disables filtering.
  double median_s = 1.0;
};

struct SpeedProfile {
  std::vector<double> speeds_mps;
  /// 1 where the speed comes from a valid delay, 0 where it was filled in.
  std::vector<std::uint8_t> measured;
  double sample_rate_hz = 0.0;
  double start_time_s = 0.0;
  double wheelbase_m = kDefaultWheelbaseM;

  std::size_t size() const noexcept { return speeds_mps.size(); }
};

SpeedProfile estimate_speed(const DelayEstimate& delays, double wheelbase_m = kDefaultWheelbaseM,
                            const SpeedOptions& options = {});

struct AlignmentOptions {
  double min_correlation = 0.5;
  /// Fraction of the estimated profile that must overlap the reference.
  double min_overlap_fraction = 0.5;
};

/// Distance offset x0 of the estimated run in reference coordinates: the
/// estimated sample at travelled distance s lines up with reference
/// distance x0 + s.
double align_to_reference(const SpeedProfile& estimated, const SpatialSeries& reference_speed,
                          const AlignmentOptions& options = {});

/// Reference given as speed against time; its distance origin is the start
/// of the reference record.
double align_to_reference(const SpeedProfile& estimated, const TimeSeries& reference_speed,
                          double spacing_m = kDefaultSpacingM, const AlignmentOptions& options = {});

}  // namespace trackgeom
