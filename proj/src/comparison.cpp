#include "trackgeom/comparison.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "trackgeom/error.hpp"

namespace trackgeom {
namespace {

// Window starts are matched on a key rounded to 1 mm.
long long window_key(double start_m) { return std::llround(start_m * 1000.0); }

struct Pairing {
  std::vector<WindowPair> pairs;
  std::size_t overlap = 0;  // windows present on both sides, valid or not
};

Pairing pair_windows(const WindowedStats& est, const WindowedStats& ref) {
  std::map<long long, const WindowStat*> by_start;
  for (const auto& w : ref.windows) by_start[window_key(w.window_start_m)] = &w;
  Pairing p;
  for (const auto& e : est.windows) {
    auto it = by_start.find(window_key(e.window_start_m));
    if (it == by_start.end()) continue;
    ++p.overlap;
    if (!e.valid || !it->second->valid) continue;
    p.pairs.push_back({e.window_start_m, e.value, it->second->value, 0.0});
  }
  return p;
}

WindowedStats shifted(const WindowedStats& s, double shift_m) {
  WindowedStats out = s;
  for (auto& w : out.windows) {
    w.window_start_m += shift_m;
    w.window_end_m += shift_m;
  }
  return out;
}

std::optional<double> try_pearson(const WindowedStats& est, const WindowedStats& ref) {
  try {
    return correlate(est, ref).pearson_r;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::insufficient_data || e.code() == ErrorCode::undefined_correlation) return std::nullopt;
    throw;
  }
}

}  // namespace

ComparisonReport correlate(const WindowedStats& est, const WindowedStats& ref) {
  require(est.window_m == ref.window_m, "correlate: window lengths differ");
  Pairing p = pair_windows(est, ref);
  const std::size_t n = p.pairs.size();
  if (n < 3) {
    fail(ErrorCode::insufficient_data, "correlate: " + std::to_string(n) + " common valid windows, at least 3 needed");
  }
  double me = 0.0, mr = 0.0;
  for (const auto& w : p.pairs) {
    me += w.estimated;
    mr += w.reference;
  }
  me /= static_cast<double>(n);
  mr /= static_cast<double>(n);
  double see = 0.0, srr = 0.0, ser = 0.0;
  for (const auto& w : p.pairs) {
    const double de = w.estimated - me;
    const double dr = w.reference - mr;
    see += de * de;
    srr += dr * dr;
    ser += de * dr;
  }
  if (see <= 0.0 || srr <= 0.0) {
    fail(ErrorCode::undefined_correlation, "correlate: zero variance in the " +
                                               std::string(see <= 0.0 ? "estimated" : "reference") + " windows");
  }
  ComparisonReport r;
  r.pearson_r = std::clamp(ser / std::sqrt(see * srr), -1.0, 1.0);
  r.slope = ser / srr;
  r.intercept = me - r.slope * mr;
  for (auto& w : p.pairs) w.residual = w.estimated - (r.slope * w.reference + r.intercept);
  r.per_window = std::move(p.pairs);
  r.n_windows = r.per_window.size();
  r.label = est.label;
  r.window_m = est.window_m;
  return r;
}

Coregistration coregister(const WindowedStats& est, const WindowedStats& ref, double max_shift_m) {
  require(est.window_m == ref.window_m && est.window_m > 0.0, "coregister: window lengths differ");
  require(max_shift_m >= 0.0, "coregister: max shift must be non-negative");
  const auto max_k = static_cast<long>(std::floor(max_shift_m / est.window_m + 1e-9));

  Coregistration out{est, ref, 0.0, 0};
  std::optional<double> best_r;
  bool any_overlap = false;
  for (long step = 0; step <= 2 * max_k; ++step) {
    // 0, +1, -1, +2, -2, ...: ties resolve to the smallest |shift|.
    const long k = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
    const double shift_m = static_cast<double>(k) * est.window_m;
    const WindowedStats moved = shifted(est, shift_m);
    if (pair_windows(moved, ref).overlap == 0) continue;
    any_overlap = true;
    const auto r = try_pearson(moved, ref);
    if (r && (!best_r || *r > *best_r)) {
      best_r = r;
      out.estimated = moved;
      out.applied_shift_m = shift_m;
      out.applied_shift_windows = k;
    }
  }
  if (!any_overlap) fail(ErrorCode::no_overlap, "coregister: estimated and reference windows do not overlap");
  return out;
}

}  // namespace trackgeom
