#include "trackgeom/speed.hpp"

#include <algorithm>
#include <cmath>

#include "trackgeom/error.hpp"
#include "trackgeom/kernels.hpp"
#include "trackgeom/spatial.hpp"

namespace trackgeom {

std::size_t DelayEstimate::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; }));
}

DelayEstimate estimate_delay(const TimeSeries& front, const TimeSeries& back, const DelayOptions& options) {
  require(front.sample_rate_hz() == back.sample_rate_hz(), "estimate_delay: front and back sample rates differ");
  require(front.size() == back.size(), "estimate_delay: front and back lengths differ");
  require(options.window >= 2, "estimate_delay: window must be at least 2 samples");
  require(options.window <= front.size(), "estimate_delay: window (" + std::to_string(options.window) +
                                              ") exceeds signal length (" + std::to_string(front.size()) + ")");
  require(options.bounds.min_s < options.bounds.max_s, "estimate_delay: delay bounds must satisfy min < max");

  const double fs = front.sample_rate_hz();
  kernels::LagSearch search;
  search.window = options.window;
  search.min_lag = static_cast<long>(std::ceil(options.bounds.min_s * fs));
  search.max_lag = static_cast<long>(std::floor(options.bounds.max_s * fs));
  search.min_quality = options.min_quality;
  require(search.max_lag - search.min_lag >= 2, "estimate_delay: delay bounds span fewer than 3 lags");

  const std::size_t n = front.size();
  const std::size_t half = options.window / 2;
  const std::size_t stride = options.stride > 0 ? options.stride : std::max<std::size_t>(1, options.window / 4);
  std::vector<std::size_t> centres;
  for (std::size_t c = half; c + (options.window - half) <= n; c += stride) centres.push_back(c);
  if (const std::size_t last = n - (options.window - half); centres.empty() || centres.back() != last) {
    centres.push_back(last);
  }

  std::vector<kernels::LagPeak> peaks(centres.size());
  kernels::omp::lag_peaks(front.samples(), back.samples(), centres, search, peaks);

  DelayEstimate out;
  out.window_samples = options.window;
  out.sample_rate_hz = fs;
  out.start_time_s = front.start_time_s();
  out.bounds = options.bounds;
  out.delays_s.assign(n, 0.0);
  out.peak_quality.assign(n, 0.0);
  out.valid.assign(n, 0);
  auto fill = [&](std::size_t i, const kernels::LagPeak& a, const kernels::LagPeak& b, double u) {
    out.peak_quality[i] = (1.0 - u) * a.quality + u * b.quality;
    if (a.valid && b.valid) {
      out.delays_s[i] = ((1.0 - u) * a.lag + u * b.lag) / fs;
      out.valid[i] = 1;
    }
  };
  for (std::size_t k = 0; k < centres.size(); ++k) {
    const std::size_t c0 = centres[k];
    if (k + 1 == centres.size()) {
      fill(c0, peaks[k], peaks[k], 0.0);
      break;
    }
    const std::size_t c1 = centres[k + 1];
    for (std::size_t i = c0; i < c1; ++i) {
      fill(i, peaks[k], peaks[k + 1], static_cast<double>(i - c0) / static_cast<double>(c1 - c0));
    }
  }
  return out;
}

SpeedProfile estimate_speed(const DelayEstimate& delays, double wheelbase_m, const SpeedOptions& options) {
  require(wheelbase_m > 0.0, "estimate_speed: wheelbase must be positive");
  require(delays.sample_rate_hz > 0.0 && !delays.delays_s.empty(), "estimate_speed: empty delay estimate");
  const std::size_t n = delays.size();
  SpeedProfile out;
  out.sample_rate_hz = delays.sample_rate_hz;
  out.start_time_s = delays.start_time_s;
  out.wheelbase_m = wheelbase_m;
  out.speeds_mps.assign(n, 0.0);
  out.measured.assign(n, 0);

  std::vector<std::size_t> valid_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (delays.valid[i] && delays.delays_s[i] != 0.0) {
      out.speeds_mps[i] = wheelbase_m / delays.delays_s[i];
      out.measured[i] = 1;
      valid_idx.push_back(i);
    }
  }
  if (valid_idx.empty()) fail(ErrorCode::no_valid_speed, "estimate_speed: no valid delay in the record");

  // Nearest-valid hold at the ends, linear between valid neighbours inside.
  for (std::size_t i = 0; i < valid_idx.front(); ++i) out.speeds_mps[i] = out.speeds_mps[valid_idx.front()];
  for (std::size_t i = valid_idx.back() + 1; i < n; ++i) out.speeds_mps[i] = out.speeds_mps[valid_idx.back()];
  for (std::size_t k = 0; k + 1 < valid_idx.size(); ++k) {
    const std::size_t a = valid_idx[k];
    const std::size_t b = valid_idx[k + 1];
    for (std::size_t i = a + 1; i < b; ++i) {
      const double u = static_cast<double>(i - a) / static_cast<double>(b - a);
      out.speeds_mps[i] = (1.0 - u) * out.speeds_mps[a] + u * out.speeds_mps[b];
    }
  }

  const auto length = static_cast<std::size_t>(std::lround(options.median_s * delays.sample_rate_hz));
  if (length > 1) out.speeds_mps = kernels::omp::running_median(out.speeds_mps, length / 2);
  return out;
}

namespace {

double align_on_grid(const SpatialSeries& estimated, const SpatialSeries& reference, const AlignmentOptions& options) {
  const auto ne = static_cast<long>(estimated.size());
  const auto nr = static_cast<long>(reference.size());
  const auto min_overlap = static_cast<std::size_t>(
      std::max(8.0, std::ceil(options.min_overlap_fraction * static_cast<double>(std::min(ne, nr)))));
  const long min_shift = -(ne - static_cast<long>(min_overlap));
  const long max_shift = nr - static_cast<long>(min_overlap);
  if (max_shift < min_shift) fail(ErrorCode::alignment_failed, "align_to_reference: profiles too short to overlap");
  const auto scores = kernels::omp::shift_scan(estimated.values, reference.values, min_shift, max_shift, min_overlap);
  long best = 0;
  double best_r = -2.0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const long shift = min_shift + static_cast<long>(k);
    if (std::isnan(scores[k])) continue;
    if (scores[k] > best_r || (scores[k] == best_r && std::abs(shift) < std::abs(best))) {
      best_r = scores[k];
      best = shift;
    }
  }
  if (best_r < options.min_correlation) {
    fail(ErrorCode::alignment_failed,
         best_r < -1.0 ? std::string("align_to_reference: speed profiles carry no features to correlate")
                       : "align_to_reference: best speed correlation " + std::to_string(best_r) +
                             " is below the threshold " + std::to_string(options.min_correlation));
  }
  return reference.start_m + static_cast<double>(best) * reference.spacing_m - estimated.start_m;
}

}  // namespace

double align_to_reference(const SpeedProfile& estimated, const SpatialSeries& reference_speed,
                          const AlignmentOptions& options) {
  require(reference_speed.spacing_m > 0.0, "align_to_reference: reference spacing must be positive");
  require(reference_speed.valid_count() == reference_speed.size(),
          "align_to_reference: reference speed must be fully valid");
  const DistanceAxis axis = build_distance_axis(estimated, 0.0);
  SpatialSeries est = interpolate_to_grid(estimated.speeds_mps, axis.positions_m, reference_speed.spacing_m);
  return align_on_grid(est, reference_speed, options);
}

double align_to_reference(const SpeedProfile& estimated, const TimeSeries& reference_speed, double spacing_m,
                          const AlignmentOptions& options) {
  const DistanceAxis ref_axis =
      build_distance_axis(reference_speed.samples(), reference_speed.sample_rate_hz(), 0.0);
  SpatialSeries ref = interpolate_to_grid(reference_speed.samples(), ref_axis.positions_m, spacing_m);
  return align_to_reference(estimated, ref, options);
}

}  // namespace trackgeom
