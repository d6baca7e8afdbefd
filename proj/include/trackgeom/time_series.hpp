#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trackgeom {

enum class SignalKind { acceleration, displacement, speed };

std::string to_string(SignalKind kind);
SignalKind signal_kind_from_string(const std::string& s);

/// Uniformly time-sampled channel. Immutable once constructed; the
/// constructor rejects empty, non-finite or badly-rated input.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> samples, double sample_rate_hz, double start_time_s,
             std::string channel_id, SignalKind kind);

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double sample_rate_hz() const noexcept { return rate_hz_; }
  double start_time_s() const noexcept { return start_s_; }
  double duration_s() const noexcept { return static_cast<double>(samples_.size()) / rate_hz_; }
  double time_at(std::size_t n) const noexcept { return start_s_ + static_cast<double>(n) / rate_hz_; }
  const std::string& channel_id() const noexcept { return channel_id_; }
  SignalKind kind() const noexcept { return kind_; }

  /// Same metadata, new payload (and optionally new rate / kind).
  TimeSeries with_samples(std::vector<double> samples) const;
  TimeSeries with_samples(std::vector<double> samples, double sample_rate_hz, SignalKind kind) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  std::vector<double> samples_;
  double rate_hz_;
  double start_s_;
  std::string channel_id_;
  SignalKind kind_;
};

struct SpectralSeries {
  std::vector<std::complex<double>> bins;
  std::vector<double> frequency_axis_hz;
};

/// One-sided DFT of a time series; bin 0 is DC.
SpectralSeries spectrum(const TimeSeries& ts);

}  // namespace trackgeom
