#include "trackgeom/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "trackgeom/error.hpp"

namespace trackgeom {
namespace {

constexpr double kGridTolerance = 1e-9;

std::string format_length(double d) {
  std::ostringstream s;
  s << d;
  return s.str();
}

WindowedStats windowed_max_impl(std::span<const double> values, std::span<const std::uint8_t> valid, double start_m,
                                double spacing_m, double window_m, const WindowOptions& options, std::string label) {
  require(window_m >= spacing_m, "windowed_max: window must be at least one grid spacing");
  const double window_samples_f = window_m / spacing_m;
  const auto window_samples = static_cast<std::size_t>(std::lround(window_samples_f));
  require(std::abs(window_samples_f - static_cast<double>(window_samples)) < 1e-6,
          "windowed_max: window must be a whole number of grid samples");

  const double anchor = options.anchor_m.value_or(start_m);
  const double first_boundary = anchor + std::floor((start_m - anchor) / window_m + kGridTolerance) * window_m;
  const auto lead = static_cast<std::size_t>(std::lround((start_m - first_boundary) / spacing_m));

  std::vector<double> padded_values(lead, 0.0);
  std::vector<std::uint8_t> padded_valid(lead, 0);
  padded_values.insert(padded_values.end(), values.begin(), values.end());
  if (valid.empty()) {
    padded_valid.resize(padded_values.size(), 1);
  } else {
    padded_valid.insert(padded_valid.end(), valid.begin(), valid.end());
  }

  const auto raw = kernels::omp::tumbling_max(padded_values, padded_valid, window_samples, options.mode);
  WindowedStats out;
  out.window_m = window_m;
  out.label = std::move(label);
  out.windows.reserve(raw.size());
  for (std::size_t w = 0; w < raw.size(); ++w) {
    WindowStat s;
    s.window_start_m = first_boundary + static_cast<double>(w) * window_m;
    s.window_end_m = s.window_start_m + window_m;
    s.valid_fraction = static_cast<double>(raw[w].valid_count) / static_cast<double>(window_samples);
    s.valid = raw[w].valid_count > 0 && s.valid_fraction >= kMinWindowValidFraction;
    s.value = raw[w].valid_count > 0 ? raw[w].value : 0.0;
    out.windows.push_back(s);
  }
  return out;
}

}  // namespace

std::string to_string(AlignmentAxis axis) { return axis == AlignmentAxis::vertical ? "vertical" : "horizontal"; }
std::string to_string(Rail rail) { return rail == Rail::left ? "left" : "right"; }

ChordSpec::ChordSpec(double d_m, double spacing_m) : d_m_(d_m), spacing_m_(spacing_m), half_span_(0) {
  require(std::isfinite(d_m) && d_m > 0.0, "ChordSpec: chord length must be positive");
  require(std::isfinite(spacing_m) && spacing_m > 0.0, "ChordSpec: spacing must be positive");
  const double half = d_m / (2.0 * spacing_m);
  const double rounded = std::round(half);
  if (rounded < 1.0 || std::abs(half - rounded) > kGridTolerance * std::max(1.0, half)) {
    std::ostringstream msg;
    msg << "ChordSpec: chord " << d_m << " m gives a half-span of " << half << " samples at " << spacing_m
        << " m spacing; it must be a whole number";
    fail(ErrorCode::invalid_argument, msg.str());
  }
  half_span_ = static_cast<std::size_t>(rounded);
}

std::string AlignmentSeries::label() const {
  return std::string(axis == AlignmentAxis::vertical ? "VA" : "HA") + format_length(chord.d_m()) + "_" +
         to_string(rail) + "_mm";
}

SpatialSeries AlignmentSeries::as_spatial() const {
  SpatialSeries s;
  s.values = values_mm;
  s.valid = valid;
  s.spacing_m = spacing_m;
  s.start_m = start_m;
  s.channel_id = label();
  s.units = "mm";
  return s;
}

AlignmentSeries chord_alignment(const SpatialSeries& z, const ChordSpec& chord, AlignmentAxis axis, Rail rail) {
  if (std::abs(chord.spacing_m() - z.spacing_m) > kGridTolerance * z.spacing_m) {
    fail(ErrorCode::invalid_argument, "chord_alignment: chord grid (" + format_length(chord.spacing_m()) +
                                          " m) does not match series spacing (" + format_length(z.spacing_m) + " m)");
  }
  const std::size_t h = chord.half_span_samples();
  const std::size_t n = z.size();
  if (n <= 2 * h) {
    fail(ErrorCode::too_short, "chord_alignment: series of " + std::to_string(n) + " samples is shorter than the " +
                                   format_length(chord.d_m()) + " m chord");
  }
  AlignmentSeries out;
  out.values_mm.assign(n, 0.0);
  out.valid.assign(n, 0);
  out.spacing_m = z.spacing_m;
  out.start_m = z.start_m;
  out.chord = chord;
  out.axis = axis;
  out.rail = rail;
  kernels::omp::chord_offsets(z.values, h, out.values_mm);
  for (std::size_t i = h; i + h < n; ++i) {
    out.valid[i] = z.is_valid(i) && z.is_valid(i - h) && z.is_valid(i + h);
    if (!out.valid[i]) out.values_mm[i] = 0.0;
  }
  return out;
}

double transfer_function(const ChordSpec& chord, double nu_cycles_per_m) {
  return 1.0 - std::cos(std::numbers::pi * chord.d_m() * nu_cycles_per_m);
}

double select_cutoff(const ChordSpec& chord, double v_ref_mps) {
  require(v_ref_mps > 0.0, "select_cutoff: reference speed must be positive");
  if (v_ref_mps == kReferenceLowSpeedMps) {
    if (chord.d_m() == 10.0) return 0.3;
    if (chord.d_m() == 35.0) return 0.1;
  }
  return v_ref_mps / chord.d_m();
}

WindowedStats windowed_max(const SpatialSeries& series, double window_m, const WindowOptions& options) {
  return windowed_max_impl(series.values, series.valid, series.start_m, series.spacing_m, window_m, options,
                           series.channel_id);
}

WindowedStats windowed_max(const AlignmentSeries& series, double window_m, const WindowOptions& options) {
  return windowed_max_impl(series.values_mm, series.valid, series.start_m, series.spacing_m, window_m, options,
                           series.label());
}

SpatialPSD psd_spatial(const SpatialSeries& series) {
  require(series.spacing_m > 0.0, "psd_spatial: spacing must be positive");
  if (series.size() < kSpatialPsdSegment) {
    fail(ErrorCode::too_short, "psd_spatial: requires at least " + std::to_string(kSpatialPsdSegment) +
                                   " samples (" + format_length(kSpatialPsdSegment * series.spacing_m) +
                                   " m), got " + std::to_string(series.size()));
  }
  WelchOptions options;
  options.segment = kSpatialPsdSegment;
  options.overlap = 0.5;
  const PowerSpectrum p = welch_psd(series.values, 1.0 / series.spacing_m, options, series.valid);
  return {p.density, p.frequency, p.segments};
}

SpatialPSD psd_spatial(const AlignmentSeries& series) { return psd_spatial(series.as_spatial()); }

}  // namespace trackgeom
