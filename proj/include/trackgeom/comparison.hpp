#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trackgeom/geometry.hpp"

namespace trackgeom {

struct WindowPair {
  double window_start_m = 0.0;
  double estimated = 0.0;
  double reference = 0.0;
  double residual = 0.0;  // estimated - (slope * reference + intercept)
};

struct ComparisonReport {
  double pearson_r = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t n_windows = 0;
  std::vector<WindowPair> per_window;
  std::string label;
  double window_m = 0.0;
  double applied_shift_m = 0.0;
};

/// Pearson r and least-squares fit est = slope * ref + intercept over the
/// windows valid on both sides (matched by window start).
ComparisonReport correlate(const WindowedStats& est, const WindowedStats& ref);

struct Coregistration {
  WindowedStats estimated;
  WindowedStats reference;
  double applied_shift_m = 0.0;
  long applied_shift_windows = 0;
};

/// Moves est by the whole number of windows within +-max_shift_m that
/// maximises r against ref. Ties go to the smaller shift.
Coregistration coregister(const WindowedStats& est, const WindowedStats& ref, double max_shift_m);

}  // namespace trackgeom
