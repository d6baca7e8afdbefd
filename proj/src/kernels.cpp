#include "trackgeom/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trackgeom::kernels {
namespace {

double window_value(double v, MaxMode mode) { return mode == MaxMode::max_abs ? std::abs(v) : v; }

WindowMax scan_window(std::span<const double> values, std::span<const std::uint8_t> valid, std::size_t begin,
                      std::size_t end, MaxMode mode) {
  WindowMax w;
  w.count = end - begin;
  bool seen = false;
  for (std::size_t i = begin; i < end; ++i) {
    if (!valid.empty() && valid[i] == 0) continue;
    const double v = window_value(values[i], mode);
    if (!seen || v > w.value) w.value = v;
    seen = true;
    ++w.valid_count;
  }
  return w;
}

double median_of(std::span<const double> values, std::size_t begin, std::size_t end, std::vector<double>& scratch) {
  scratch.assign(values.begin() + static_cast<std::ptrdiff_t>(begin), values.begin() + static_cast<std::ptrdiff_t>(end));
  const std::size_t mid = scratch.size() / 2;
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid), scratch.end());
  const double upper = scratch[mid];
  if (scratch.size() % 2 == 1) return upper;
  const double lower = *std::max_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::size_t window_count(std::size_t n, std::size_t window) { return window == 0 ? 0 : (n + window - 1) / window; }

}  // namespace

LagPeak lag_peak_at(std::span<const double> front, std::span<const double> back, std::size_t centre,
                    const LagSearch& search) {
  LagPeak peak;
  const auto n = static_cast<long>(std::min(front.size(), back.size()));
  const auto half = static_cast<long>(search.window / 2);
  const long c = static_cast<long>(centre);
  const long first = c - half;
  const long last = c - half + static_cast<long>(search.window) - 1;
  if (first < 0 || last >= n) return peak;

  const long lo = std::max(search.min_lag, -first);
  const long hi = std::min(search.max_lag, n - 1 - last);
  if (hi - lo < 2) return peak;

  double front_energy = 0.0;
  for (long i = first; i <= last; ++i) front_energy += front[i] * front[i];
  if (front_energy <= 0.0) return peak;

  long best = lo;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> corr(static_cast<std::size_t>(hi - lo + 1));
  for (long lag = lo; lag <= hi; ++lag) {
    double s = 0.0;
    for (long i = first; i <= last; ++i) s += front[i] * back[i + lag];
    corr[static_cast<std::size_t>(lag - lo)] = s;
    if (s > best_value) {
      best_value = s;
      best = lag;
    }
  }
  if (best == lo || best == hi) return peak;

  double back_energy = 0.0;
  for (long i = first; i <= last; ++i) back_energy += back[i + best] * back[i + best];
  if (back_energy <= 0.0) return peak;
  peak.quality = std::clamp(best_value / std::sqrt(front_energy * back_energy), 0.0, 1.0);

  const double ym = corr[static_cast<std::size_t>(best - 1 - lo)];
  const double y0 = corr[static_cast<std::size_t>(best - lo)];
  const double yp = corr[static_cast<std::size_t>(best + 1 - lo)];
  const double curvature = ym - 2.0 * y0 + yp;
  double delta = 0.0;
  if (curvature < 0.0) delta = std::clamp(0.5 * (ym - yp) / curvature, -0.5, 0.5);
  peak.lag = static_cast<double>(best) + delta;
  peak.valid = peak.quality >= search.min_quality;
  return peak;
}

double shifted_pearson(std::span<const double> a, std::span<const double> b, long shift, std::size_t min_overlap) {
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  const long begin = std::max(0L, -shift);
  const long end = std::min(na, nb - shift);
  if (end - begin < static_cast<long>(std::max<std::size_t>(min_overlap, 2))) return std::numeric_limits<double>::quiet_NaN();
  const double count = static_cast<double>(end - begin);
  double ma = 0.0, mb = 0.0;
  for (long i = begin; i < end; ++i) {
    ma += a[i];
    mb += b[i + shift];
  }
  ma /= count;
  mb /= count;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (long i = begin; i < end; ++i) {
    const double da = a[i] - ma;
    const double db = b[i + shift] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

namespace serial {

void lag_peaks(std::span<const double> front, std::span<const double> back, std::span<const std::size_t> centres,
               const LagSearch& search, std::span<LagPeak> out) {
  for (std::size_t k = 0; k < centres.size(); ++k) out[k] = lag_peak_at(front, back, centres[k], search);
}

void chord_offsets(std::span<const double> z, std::size_t half_span, std::span<double> out) {
  for (std::size_t i = half_span; i + half_span < z.size(); ++i) {
    out[i] = z[i] - 0.5 * (z[i - half_span] + z[i + half_span]);
  }
}

std::vector<WindowMax> tumbling_max(std::span<const double> values, std::span<const std::uint8_t> valid,
                                    std::size_t window, MaxMode mode) {
  std::vector<WindowMax> out(window_count(values.size(), window));
  for (std::size_t w = 0; w < out.size(); ++w) {
    out[w] = scan_window(values, valid, w * window, std::min(values.size(), (w + 1) * window), mode);
  }
  return out;
}

std::vector<double> running_median(std::span<const double> values, std::size_t half_width) {
  std::vector<double> out(values.size());
  std::vector<double> scratch;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t begin = i >= half_width ? i - half_width : 0;
    const std::size_t end = std::min(values.size(), i + half_width + 1);
    out[i] = median_of(values, begin, end, scratch);
  }
  return out;
}

std::vector<double> shift_scan(std::span<const double> a, std::span<const double> b, long min_shift, long max_shift,
                               std::size_t min_overlap) {
  std::vector<double> out(static_cast<std::size_t>(std::max(0L, max_shift - min_shift + 1)));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = shifted_pearson(a, b, min_shift + static_cast<long>(k), min_overlap);
  }
  return out;
}

}  // namespace serial

namespace omp {

void lag_peaks(std::span<const double> front, std::span<const double> back, std::span<const std::size_t> centres,
               const LagSearch& search, std::span<LagPeak> out) {
  const auto n = static_cast<std::ptrdiff_t>(centres.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = lag_peak_at(front, back, centres[k], search);
}

void chord_offsets(std::span<const double> z, std::size_t half_span, std::span<double> out) {
  if (z.size() <= 2 * half_span) return;
  const auto end = static_cast<std::ptrdiff_t>(z.size() - half_span);
  const auto h = static_cast<std::ptrdiff_t>(half_span);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = h; i < end; ++i) out[i] = z[i] - 0.5 * (z[i - h] + z[i + h]);
}

std::vector<WindowMax> tumbling_max(std::span<const double> values, std::span<const std::uint8_t> valid,
                                    std::size_t window, MaxMode mode) {
  std::vector<WindowMax> out(window_count(values.size(), window));
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t w = 0; w < n; ++w) {
    const auto begin = static_cast<std::size_t>(w) * window;
    out[w] = scan_window(values, valid, begin, std::min(values.size(), begin + window), mode);
  }
  return out;
}

std::vector<double> running_median(std::span<const double> values, std::size_t half_width) {
  std::vector<double> out(values.size());
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::size_t iu = static_cast<std::size_t>(i);
      const std::size_t begin = iu >= half_width ? iu - half_width : 0;
      const std::size_t end = std::min(values.size(), iu + half_width + 1);
      out[iu] = median_of(values, begin, end, scratch);
    }
  }
  return out;
}

std::vector<double> shift_scan(std::span<const double> a, std::span<const double> b, long min_shift, long max_shift,
                               std::size_t min_overlap) {
  std::vector<double> out(static_cast<std::size_t>(std::max(0L, max_shift - min_shift + 1)));
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = shifted_pearson(a, b, min_shift + static_cast<long>(k), min_overlap);
  return out;
}

}  // namespace omp

}  // namespace trackgeom::kernels
