#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "trackgeom/geometry.hpp"
#include "trackgeom/spatial_series.hpp"
#include "trackgeom/time_series.hpp"
#include "trackgeom/trc.hpp"

namespace trackgeom {

inline constexpr double kGravity = 9.81;

// ---------------------------------------------------------------- profiles

struct ProfileComponent {
  double nu = 0.0;            // cycles/m
  double amplitude_mm = 0.0;
  double phase = 0.0;         // rad
};

enum class ProfileChannel : std::size_t { z_left = 0, z_right = 1, y_left = 2, y_right = 3 };

std::string to_string(ProfileChannel c);

struct SinusoidSpec {
  std::vector<ProfileComponent> components;
};

/// Band-limited noise realised as a random-phase multisine on the 1/length
/// frequency grid, scaled to the exact target RMS.
struct FilteredNoiseSpec {
  double nu_low = 0.02;
  double nu_high = 0.5;
  double rms_mm = 3.0;
};

using ProfileSpec = std::variant<SinusoidSpec, FilteredNoiseSpec>;

struct ProfileOptions {
  /// Correlation between left and right rails of the noise spec.
  double lr_correlation = 0.7;
  double max_abs_mm = 50.0;
  double fine_spacing_m = 0.05;
};

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

/// Ground-truth deviations of both rails (mm against m). The component
/// lists are authoritative and valid for any x, including slightly before 0;
/// the sampled arrays cover [0, length] on the fine grid.
struct TrackProfile {
  double length_m = 0.0;
  double fine_spacing_m = 0.05;
  std::array<std::vector<ProfileComponent>, 4> components;
  std::array<std::vector<double>, 4> sampled;
  std::vector<GeoPoint> geo_polyline;

  const std::vector<double>& z_left() const { return sampled[0]; }
  const std::vector<double>& z_right() const { return sampled[1]; }
  const std::vector<double>& y_left() const { return sampled[2]; }
  const std::vector<double>& y_right() const { return sampled[3]; }

  /// order-th derivative with respect to x (mm / m^order).
  double evaluate(ProfileChannel c, double x_m, int order = 0) const;
  /// Analytic samples at start_m + i * spacing_m for i < count.
  SpatialSeries sample(ProfileChannel c, double start_m, double spacing_m, std::size_t count) const;
};

TrackProfile synth_profile(double length_m, const ProfileSpec& spec, std::uint64_t seed,
                           const ProfileOptions& options = {});

/// Derivatives of orders 0..3 of a component sum on a uniform grid.
std::array<std::vector<double>, 4> sample_derivatives(const std::vector<ProfileComponent>& components, double x0_m,
                                                      double dx_m, std::size_t count);

// ----------------------------------------------------------------- sensors

enum class SensorLocation { carbody, bogie, axlebox };
enum class SensorTechnology { mems, iepe };

std::string to_string(SensorLocation l);
SensorLocation sensor_location_from_string(const std::string& s);

struct SensorSpec {
  SensorLocation location = SensorLocation::bogie;
  double range_g = 16.0;
  double noise_floor_ug_sqrtHz = 300.0;
  std::string name = "bogie-mems";
};

/// Catalogue values of the reference rig: carbody/bogie/axlebox MEMS and IEPE.
SensorSpec catalogue_sensor(SensorLocation location, SensorTechnology technology);
/// Lookup by name, e.g. "bogie-mems" or "axlebox-iepe".
SensorSpec catalogue_sensor(const std::string& name);

/// Per-sample standard deviation of white noise at the given floor and rate.
double noise_sigma_mps2(double noise_floor_ug_sqrtHz, double sample_rate_hz);

struct NoisyChannel {
  TimeSeries series;
  std::vector<std::uint8_t> clipped;
  std::size_t clipped_count = 0;
};

NoisyChannel add_sensor_noise(const TimeSeries& ts, const SensorSpec& spec, std::uint64_t seed);

/// Stable per-channel seed: seed mixed with a hash of the channel label.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& channel_id);

// -------------------------------------------------------------- simulation

struct SpeedPoint {
  double t_s = 0.0;
  double v_mps = 0.0;
};

/// Piecewise-linear speed against time starting at t = 0, position 0.
class SpeedPlan {
 public:
  explicit SpeedPlan(std::vector<SpeedPoint> points);

  const std::vector<SpeedPoint>& points() const noexcept { return points_; }
  double end_time_s() const noexcept { return points_.back().t_s; }
  double total_distance_m() const noexcept { return cumulative_.back(); }
  double speed(double t_s) const;
  double acceleration(double t_s) const;
  double position(double t_s) const;
  /// First time at which position reaches x_m; throws plan-too-short beyond the plan.
  double time_at(double x_m) const;

  /// Constant speed v for duration_s.
  static SpeedPlan constant(double v_mps, double duration_s);

 private:
  std::size_t segment(double t_s) const;
  std::vector<SpeedPoint> points_;
  std::vector<double> cumulative_;
};

struct ImpulseEvent {
  double position_m = 0.0;
  double amplitude_g = 0.0;
  double duration_ms = 5.0;
};

struct LateralDisturbance {
  double amplitude_mps2 = 0.0;
  double frequency_hz = 0.5;
};

struct SimConfig {
  SpeedPlan speed_plan = SpeedPlan::constant(10.0, 100.0);
  double wheelbase_m = 2.5;
  double sample_rate_hz = 2560.0;
  std::vector<ImpulseEvent> impulse_events;
  std::uint64_t rng_seed = 1;
  SensorSpec sensor{};
  LateralDisturbance lateral_disturbance{};
};

enum class Wheel { front, back };
enum class SensorAxis { vertical, lateral };

std::string channel_name(SensorLocation location, Wheel wheel, Rail rail, SensorAxis axis);

struct SimulatedChannel {
  TimeSeries series;
  Wheel wheel;
  Rail rail;
  SensorAxis axis;
};

struct SimulatedRun {
  std::vector<SimulatedChannel> channels;
  double duration_s = 0.0;

  const TimeSeries& channel(const std::string& id) const;
};

/// Rigid kinematic traversal: each sensor sees the second time derivative of
/// the profile under its wheel. The front wheel starts at x = 0, the back
/// wheel trails by the wheelbase; the run ends when the front wheel reaches
/// the end of the profile. Noise and impulses are not included.
SimulatedRun simulate_run(const TrackProfile& profile, const SimConfig& config);

/// Adds raised-cosine acceleration pulses at the times the wheel (trailing the
/// front by offset_m) passes each event position.
TimeSeries inject_impulses(const TimeSeries& ts, const SpeedPlan& plan, double offset_m,
                           const std::vector<ImpulseEvent>& events);

/// Impulses on vertical channels, then sensor noise and clipping with
/// per-channel seeds. Returns channels in the order of run.channels.
std::vector<NoisyChannel> sense(const SimulatedRun& run, const SimConfig& config);

/// Reference table of the simulated track: speed plus VA and HA columns for
/// the requested chords and both rails, computed from the analytic profile on
/// a grid extended by half a chord on both sides so every row is valid.
TrcTable ground_truth(const TrackProfile& profile, const SpeedPlan& plan,
                      const std::vector<double>& va_chords_m = {10.0, 35.0},
                      const std::vector<double>& ha_chords_m = {10.0}, double spacing_m = kDefaultSpacingM);

}  // namespace trackgeom
