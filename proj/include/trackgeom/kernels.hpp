#pragma once

// Data-parallel inner loops of the pipeline. Every kernel exists twice: a
// plain serial reference (namespace serial) and an OpenMP version
// (namespace omp) that must produce bit-identical results. The public
// operations call the OpenMP versions; tests and the benchmark compare both.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trackgeom::kernels {

struct LagSearch {
  std::size_t window = 960;  // samples, centred on the evaluation index
  long min_lag = 16;         // inclusive, samples
  long max_lag = 640;        // inclusive, samples
  double min_quality = 0.3;
};

struct LagPeak {
  double lag = 0.0;      // samples, sub-sample refined
  double quality = 0.0;  // normalised correlation at the integer peak, [0, 1]
  bool valid = false;
};

/// Accumulated value of one tumbling window.
struct WindowMax {
  double value = 0.0;
  std::size_t valid_count = 0;
  std::size_t count = 0;
};

enum class MaxMode { max_abs, max_signed };

/// Lag maximising sum_m front[n+m] * back[n+m+lag], m in [-window/2, window/2),
/// for each centre n. A peak on the edge of the searchable lag range is
/// reported invalid: the true maximum may lie outside it.
LagPeak lag_peak_at(std::span<const double> front, std::span<const double> back, std::size_t centre,
                    const LagSearch& search);

/// Pearson correlation between a[i] and b[i + shift] over their overlap;
/// NaN when the overlap is below min_overlap or either side is constant.
double shifted_pearson(std::span<const double> a, std::span<const double> b, long shift, std::size_t min_overlap);

namespace serial {
void lag_peaks(std::span<const double> front, std::span<const double> back, std::span<const std::size_t> centres,
               const LagSearch& search, std::span<LagPeak> out);
void chord_offsets(std::span<const double> z, std::size_t half_span, std::span<double> out);
std::vector<WindowMax> tumbling_max(std::span<const double> values, std::span<const std::uint8_t> valid,
                                    std::size_t window, MaxMode mode);
std::vector<double> running_median(std::span<const double> values, std::size_t half_width);
std::vector<double> shift_scan(std::span<const double> a, std::span<const double> b, long min_shift, long max_shift,
                               std::size_t min_overlap);
}  // namespace serial

namespace omp {
void lag_peaks(std::span<const double> front, std::span<const double> back, std::span<const std::size_t> centres,
               const LagSearch& search, std::span<LagPeak> out);
void chord_offsets(std::span<const double> z, std::size_t half_span, std::span<double> out);
std::vector<WindowMax> tumbling_max(std::span<const double> values, std::span<const std::uint8_t> valid,
                                    std::size_t window, MaxMode mode);
std::vector<double> running_median(std::span<const double> values, std::size_t half_width);
std::vector<double> shift_scan(std::span<const double> a, std::span<const double> b, long min_shift, long max_shift,
                               std::size_t min_overlap);
}  // namespace omp

}  // namespace trackgeom::kernels
