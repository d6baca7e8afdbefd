#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trackgeom/kernels.hpp"
#include "trackgeom/signal.hpp"
#include "trackgeom/spatial_series.hpp"

namespace trackgeom {

enum class AlignmentAxis { vertical, horizontal };
enum class Rail { left, right };

std::string to_string(AlignmentAxis axis);
std::string to_string(Rail rail);

/// Chord of length d on a grid; d / 2 must land on a whole grid sample.
class ChordSpec {
 public:
  ChordSpec(double d_m, double spacing_m = kDefaultSpacingM);

  double d_m() const noexcept { return d_m_; }
  double spacing_m() const noexcept { return spacing_m_; }
  std::size_t half_span_samples() const noexcept { return half_span_; }

  bool operator==(const ChordSpec&) const = default;

 private:
  double d_m_;
  double spacing_m_;
  std::size_t half_span_;
};

/// Mid-chord offset series (VA_d when vertical, HA_d when lateral).
struct AlignmentSeries {
  std::vector<double> values_mm;
  std::vector<std::uint8_t> valid;
  double spacing_m = kDefaultSpacingM;
  double start_m = 0.0;
  ChordSpec chord{10.0};
  AlignmentAxis axis = AlignmentAxis::vertical;
  Rail rail = Rail::left;

  std::size_t size() const noexcept { return values_mm.size(); }
  double position(std::size_t i) const noexcept { return start_m + static_cast<double>(i) * spacing_m; }
  /// Column label in the TRC convention, e.g. VA10_left_mm.
  std::string label() const;
  SpatialSeries as_spatial() const;
};

/// value[i] = z[i] - (z[i-h] + z[i+h]) / 2. The first and last h samples and
/// any sample whose stencil touches an invalid input are flagged invalid.
AlignmentSeries chord_alignment(const SpatialSeries& z, const ChordSpec& chord,
                                AlignmentAxis axis = AlignmentAxis::vertical, Rail rail = Rail::left);

/// Displacement-to-alignment gain, 1 - cos(pi d nu).
double transfer_function(const ChordSpec& chord, double nu_cycles_per_m);

inline constexpr double kReferenceLowSpeedMps = 3.0;

/// High-pass cutoff for displacement reconstruction. At the reference low
/// speed of 3 m/s the 10 m and 35 m chords use the tabulated 0.3 Hz and
/// 0.1 Hz; any other combination uses v_ref / d, the temporal frequency of the
/// first transfer-function maximum at v_ref.
double select_cutoff(const ChordSpec& chord, double v_ref_mps = kReferenceLowSpeedMps);

using kernels::MaxMode;

struct WindowStat {
  double window_start_m = 0.0;
  double window_end_m = 0.0;
  double value = 0.0;
  double valid_fraction = 0.0;
  bool valid = false;
};

inline constexpr double kMinWindowValidFraction = 0.5;

struct WindowedStats {
  std::vector<WindowStat> windows;
  double window_m = 0.0;
  std::string label;

  std::size_t size() const noexcept { return windows.size(); }
};

struct WindowOptions {
  MaxMode mode = MaxMode::max_abs;
  /// Window boundaries sit at anchor + k * window; defaults to the series start.
  std::optional<double> anchor_m;
};

/// Tumbling-window maxima over the valid samples of each window.
WindowedStats windowed_max(const SpatialSeries& series, double window_m, const WindowOptions& options = {});
WindowedStats windowed_max(const AlignmentSeries& series, double window_m, const WindowOptions& options = {});

inline constexpr std::size_t kSpatialPsdSegment = 512;

struct SpatialPSD {
  std::vector<double> density;  // units^2 * m
  std::vector<double> nu_axis;  // cycles/m
  std::size_t segments = 0;

  double bin_width() const { return nu_axis.size() > 1 ? nu_axis[1] - nu_axis[0] : 0.0; }
};

/// Averaged periodogram over fully valid 512-sample segments, 50% overlap,
/// Hann taper.
SpatialPSD psd_spatial(const SpatialSeries& series);
SpatialPSD psd_spatial(const AlignmentSeries& series);

}  // namespace trackgeom
