#include "trackgeom/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "trackgeom/error.hpp"
#include "trackgeom/fft.hpp"

namespace trackgeom {
namespace {

using std::numbers::pi;

std::size_t reflection_length(const TimeSeries& ts) {
  const auto pad = static_cast<std::size_t>(std::lround(kReflectionPadS * ts.sample_rate_hz()));
  return std::min(pad, ts.size());
}

// Half-sample symmetric extension: x[-1-k] = x[k], x[n+k] = x[n-1-k].
std::vector<double> reflect(std::span<const double> x, std::size_t pad) {
  std::vector<double> ext;
  ext.reserve(x.size() + 2 * pad);
  ext.insert(ext.end(), std::make_reverse_iterator(x.begin() + static_cast<std::ptrdiff_t>(pad)),
             std::make_reverse_iterator(x.begin()));
  ext.insert(ext.end(), x.begin(), x.end());
  ext.insert(ext.end(), x.rbegin(), x.rbegin() + static_cast<std::ptrdiff_t>(pad));
  return ext;
}

// Extends, transforms, applies gain(f) bin by bin, inverts and trims.
template <typename Gain>
std::vector<double> filter_in_frequency(const TimeSeries& ts, Gain gain) {
  const std::size_t pad = reflection_length(ts);
  const std::vector<double> ext = reflect(ts.samples(), pad);
  auto bins = fft::forward_real(ext);
  const auto freq = fft::rfft_frequencies(ext.size(), ts.sample_rate_hz());
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] *= gain(k, freq[k]);
  std::vector<double> y = fft::inverse_real(bins, ext.size());
  return {y.begin() + static_cast<std::ptrdiff_t>(pad),
          y.begin() + static_cast<std::ptrdiff_t>(pad + ts.size())};
}

}  // namespace

double highpass_gain(double f_hz, double cutoff_hz) {
  const double lo = cutoff_hz / std::numbers::sqrt2;
  const double hi = cutoff_hz * std::numbers::sqrt2;
  if (f_hz <= lo) return 0.0;
  if (f_hz >= hi) return 1.0;
  const double u = std::log2(f_hz / lo);
  return 0.5 * (1.0 - std::cos(pi * u));
}

double lowpass_gain(double f_hz, double pass_hz, double stop_hz) {
  if (f_hz <= pass_hz) return 1.0;
  if (f_hz >= stop_hz) return 0.0;
  const double u = (f_hz - pass_hz) / (stop_hz - pass_hz);
  return 0.5 * (1.0 + std::cos(pi * u));
}

TimeSeries decimate(const TimeSeries& ts, std::size_t factor) {
  require(factor >= 1, "decimate: factor must be >= 1");
  if (factor == 1) return ts;
  const std::size_t out_len = ts.size() / factor;
  require(out_len >= 1, "decimate: record shorter than one decimation factor");
  const double new_rate = ts.sample_rate_hz() / static_cast<double>(factor);
  const double nyquist = 0.5 * new_rate;
  const double pass = kDecimationPassFraction * nyquist;
  const double stop = kDecimationStopFraction * nyquist;
  const auto filtered = filter_in_frequency(ts, [&](std::size_t, double f) { return lowpass_gain(f, pass, stop); });
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = filtered[i * factor];
  return ts.with_samples(std::move(out), new_rate, ts.kind());
}

TimeSeries highpass(const TimeSeries& ts, double cutoff_hz) {
  require(cutoff_hz > 0.0, "highpass: cutoff must be positive");
  require(cutoff_hz < 0.5 * ts.sample_rate_hz(), "highpass: cutoff must be below Nyquist");
  auto y = filter_in_frequency(ts, [&](std::size_t k, double f) { return k == 0 ? 0.0 : highpass_gain(f, cutoff_hz); });
  return ts.with_samples(std::move(y));
}

TimeSeries double_integrate(const TimeSeries& ts, double cutoff_hz) {
  require(ts.kind() == SignalKind::acceleration, "double_integrate: input must be an acceleration channel");
  require(cutoff_hz > 0.0, "double_integrate: cutoff must be positive (1/f^2 is undefined at DC)");
  require(cutoff_hz < 0.5 * ts.sample_rate_hz(), "double_integrate: cutoff must be below Nyquist");
  bool any_nonzero_bin = false;
  auto y = filter_in_frequency(ts, [&](std::size_t k, double f) {
    if (k == 0) return 0.0;
    if (f > 0.0) any_nonzero_bin = true;
    const double w = 2.0 * pi * f;
    return -highpass_gain(f, cutoff_hz) / (w * w);
  });
  if (!any_nonzero_bin && ts.size() > 1) fail(ErrorCode::internal, "double_integrate: degenerate frequency axis");
  return ts.with_samples(std::move(y), ts.sample_rate_hz(), SignalKind::displacement);
}

TimeSeries merge_records(std::span<const TimeSeries> parts) {
  require(!parts.empty(), "merge_records: no parts");
  const TimeSeries& first = parts.front();
  const double rate = first.sample_rate_hz();
  std::vector<double> merged(first.samples().begin(), first.samples().end());
  double expected_start = first.start_time_s() + first.duration_s();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const TimeSeries& part = parts[p];
    require(part.sample_rate_hz() == rate, "merge_records: sample rate mismatch in part " + std::to_string(p));
    require(part.channel_id() == first.channel_id(),
            "merge_records: channel mismatch ('" + part.channel_id() + "' vs '" + first.channel_id() + "')");
    require(part.kind() == first.kind(), "merge_records: signal kind mismatch in part " + std::to_string(p));
    require(part.start_time_s() >= parts[p - 1].start_time_s(), "merge_records: start times must be non-decreasing");
    const double gap_samples = (part.start_time_s() - expected_start) * rate;
    const long gap = std::lround(gap_samples);
    require(gap >= 0, "merge_records: part " + std::to_string(p) + " overlaps its predecessor");
    if (static_cast<std::size_t>(gap) > kMaxBridgedGap) {
      std::ostringstream msg;
      msg << "merge_records: gap of " << gap << " samples at t=" << expected_start << " s (channel '"
          << first.channel_id() << "', before part " << p << ")";
      fail(ErrorCode::gap_too_large, msg.str());
    }
    const double left = merged.back();
    const double right = part.samples().front();
    for (long j = 1; j <= gap; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(gap + 1);
      merged.push_back(left + u * (right - left));
    }
    merged.insert(merged.end(), part.samples().begin(), part.samples().end());
    expected_start = part.start_time_s() + part.duration_s();
  }
  return first.with_samples(std::move(merged));
}

PowerSpectrum welch_psd(std::span<const double> values, double rate, const WelchOptions& options,
                        std::span<const std::uint8_t> valid) {
  require(rate > 0.0, "welch_psd: rate must be positive");
  require(options.segment >= 2, "welch_psd: segment must hold at least 2 samples");
  require(options.overlap >= 0.0 && options.overlap < 1.0, "welch_psd: overlap must be in [0, 1)");
  require(valid.empty() || valid.size() == values.size(), "welch_psd: validity mask length mismatch");
  const std::size_t seg = options.segment;
  if (values.size() < seg) {
    fail(ErrorCode::too_short, "welch_psd: requires at least " + std::to_string(seg) + " samples, got " +
                                   std::to_string(values.size()));
  }
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(seg) * (1.0 - options.overlap))));

  std::vector<double> window(seg);
  double window_power = 0.0;
  for (std::size_t i = 0; i < seg; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(seg));
    window_power += window[i] * window[i];
  }

  PowerSpectrum out;
  out.frequency = fft::rfft_frequencies(seg, rate);
  out.density.assign(out.frequency.size(), 0.0);
  std::vector<double> buf(seg);
  for (std::size_t start = 0; start + seg <= values.size(); start += hop) {
    if (!valid.empty() &&
        std::any_of(valid.begin() + static_cast<std::ptrdiff_t>(start),
                    valid.begin() + static_cast<std::ptrdiff_t>(start + seg), [](std::uint8_t v) { return v == 0; })) {
      continue;
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < seg; ++i) mean += values[start + i];
    mean /= static_cast<double>(seg);
    for (std::size_t i = 0; i < seg; ++i) buf[i] = (values[start + i] - mean) * window[i];
    const auto bins = fft::forward_real(buf);
    for (std::size_t k = 0; k < bins.size(); ++k) {
      const bool edge = k == 0 || (seg % 2 == 0 && k == seg / 2);
      out.density[k] += (edge ? 1.0 : 2.0) * std::norm(bins[k]) / (rate * window_power);
    }
    ++out.segments;
  }
  if (out.segments == 0) {
    fail(ErrorCode::too_short, "welch_psd: no fully valid segment of " + std::to_string(seg) + " samples");
  }
  for (double& d : out.density) d /= static_cast<double>(out.segments);
  return out;
}

}  // namespace trackgeom
