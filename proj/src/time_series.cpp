#include "trackgeom/time_series.hpp"

#include <algorithm>
#include <cmath>

#include "trackgeom/error.hpp"
#include "trackgeom/fft.hpp"

namespace trackgeom {

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::acceleration: return "acceleration";
    case SignalKind::displacement: return "displacement";
    case SignalKind::speed: return "speed";
  }
  return "unknown";
}

SignalKind signal_kind_from_string(const std::string& s) {
  if (s == "acceleration") return SignalKind::acceleration;
  if (s == "displacement") return SignalKind::displacement;
  if (s == "speed") return SignalKind::speed;
  fail(ErrorCode::invalid_argument, "unknown signal kind '" + s + "'");
}

TimeSeries::TimeSeries(std::vector<double> samples, double sample_rate_hz, double start_time_s,
                       std::string channel_id, SignalKind kind)
    : samples_(std::move(samples)),
      rate_hz_(sample_rate_hz),
      start_s_(start_time_s),
      channel_id_(std::move(channel_id)),
      kind_(kind) {
  require(std::isfinite(rate_hz_) && rate_hz_ > 0.0, "TimeSeries: sample rate must be positive");
  require(std::isfinite(start_s_), "TimeSeries: start time must be finite");
  require(!samples_.empty(), "TimeSeries: at least one sample required");
  const bool finite = std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); });
  require(finite, "TimeSeries: non-finite sample in channel '" + channel_id_ + "'");
}

TimeSeries TimeSeries::with_samples(std::vector<double> samples) const {
  return {std::move(samples), rate_hz_, start_s_, channel_id_, kind_};
}

TimeSeries TimeSeries::with_samples(std::vector<double> samples, double sample_rate_hz, SignalKind kind) const {
  return {std::move(samples), sample_rate_hz, start_s_, channel_id_, kind};
}

SpectralSeries spectrum(const TimeSeries& ts) {
  SpectralSeries out;
  out.bins = fft::forward_real(ts.samples());
  out.frequency_axis_hz = fft::rfft_frequencies(ts.size(), ts.sample_rate_hz());
  return out;
}

}  // namespace trackgeom
