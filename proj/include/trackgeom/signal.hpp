#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trackgeom/time_series.hpp"

namespace trackgeom {

/// Seconds of even-symmetric reflection added to each end before any
/// DFT-domain filtering; trimmed again afterwards.
inline constexpr double kReflectionPadS = 2.0;

/// Anti-alias low-pass transition, as fractions of the decimated Nyquist.
/// Half-gain at 0.8.
inline constexpr double kDecimationPassFraction = 0.7;
inline constexpr double kDecimationStopFraction = 0.9;

/// Gain of the zero-phase high-pass mask. Raised-cosine in log-frequency over
/// one octave centred (geometrically) on cutoff_hz: 0 below cutoff/sqrt(2),
/// 1 above cutoff*sqrt(2).
double highpass_gain(double f_hz, double cutoff_hz);

/// Raised-cosine low-pass gain, linear in frequency between pass_hz and stop_hz.
double lowpass_gain(double f_hz, double pass_hz, double stop_hz);

/// Keep every factor-th sample after a zero-phase anti-alias low-pass.
/// Trailing samples that do not fill a full factor are dropped.
TimeSeries decimate(const TimeSeries& ts, std::size_t factor);

TimeSeries highpass(const TimeSeries& ts, double cutoff_hz);

/// Acceleration to displacement by division with -(2*pi*f)^2 in the DFT
/// domain. The DC bin is zeroed and the high-pass mask of highpass() is
/// applied inside the same transform.
TimeSeries double_integrate(const TimeSeries& ts, double cutoff_hz);

/// Joins consecutive blocks of one channel. Gaps of up to kMaxBridgedGap
/// missing samples are linearly interpolated.
inline constexpr std::size_t kMaxBridgedGap = 2;
TimeSeries merge_records(std::span<const TimeSeries> parts);

struct WelchOptions {
  std::size_t segment = 512;
  double overlap = 0.5;
};

/// One-sided averaged-periodogram density (units^2 per unit frequency).
/// Sum of density * bin width approximates the variance of the input.
struct PowerSpectrum {
  std::vector<double> density;
  std::vector<double> frequency;
  std::size_t segments = 0;

  double bin_width() const { return frequency.size() > 1 ? frequency[1] - frequency[0] : 0.0; }
};

/// Hann-tapered, mean-removed segments. Segments that contain a sample with
/// valid[i] == 0 are skipped when a mask is supplied.
PowerSpectrum welch_psd(std::span<const double> values, double rate, const WelchOptions& options = {},
                        std::span<const std::uint8_t> valid = {});

}  // namespace trackgeom
