#include "trackgeom/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "trackgeom/error.hpp"
#include "trackgeom/fft.hpp"

namespace trackgeom {
namespace {

using std::numbers::pi;

constexpr std::size_t kReseedInterval = 512;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<ProfileComponent> random_multisine(double length_m, const FilteredNoiseSpec& spec, std::mt19937_64& rng) {
  const double dnu = 1.0 / length_m;
  const auto k_lo = static_cast<long>(std::ceil(spec.nu_low / dnu - 1e-9));
  const auto k_hi = static_cast<long>(std::floor(spec.nu_high / dnu + 1e-9));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::vector<ProfileComponent> c;
  for (long k = std::max(1L, k_lo); k <= k_hi; ++k) c.push_back({static_cast<double>(k) * dnu, 1.0, phase(rng)});
  return c;
}

double rms_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

void scale(std::vector<ProfileComponent>& c, double factor) {
  for (auto& p : c) p.amplitude_mm *= factor;
}

double evaluate_components(const std::vector<ProfileComponent>& comps, double x, int order) {
  double s = 0.0;
  for (const auto& c : comps) {
    const double w = 2.0 * pi * c.nu;
    s += c.amplitude_mm * std::pow(w, order) * std::sin(w * x + c.phase + 0.5 * pi * order);
  }
  return s;
}

// Cubic Hermite lookup of derivative `order` using derivative order + 1.
struct HermiteTable {
  double x0 = 0.0;
  double h = 1.0;
  std::array<std::vector<double>, 4> d;

  double at(double x, int order) const {
    const double t = (x - x0) / h;
    auto i = static_cast<std::ptrdiff_t>(std::floor(t));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(d[0].size()) - 2);
    const double u = t - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    const auto& f = d[static_cast<std::size_t>(order)];
    const auto& g = d[static_cast<std::size_t>(order + 1)];
    return (2 * u3 - 3 * u2 + 1) * f[i] + (u3 - 2 * u2 + u) * h * g[i] + (-2 * u3 + 3 * u2) * f[i + 1] +
           (u3 - u2) * h * g[i + 1];
  }
};

double max_nu(const std::vector<ProfileComponent>& c) {
  double m = 0.0;
  for (const auto& p : c) m = std::max(m, p.nu);
  return m;
}

// Components sharing a common period that is a whole number of grid steps
// can be synthesised exactly with one inverse DFT per derivative order.
// Returns the period in samples, or 0 when the direct sum must be used.
std::size_t common_period_samples(const std::vector<ProfileComponent>& comps, double dx) {
  if (comps.size() < 64) return 0;
  std::vector<double> nu;
  nu.reserve(comps.size());
  for (const auto& c : comps) nu.push_back(c.nu);
  std::sort(nu.begin(), nu.end());
  double step = 0.0;
  for (std::size_t i = 1; i < nu.size(); ++i) {
    const double d = nu[i] - nu[i - 1];
    if (d > 1e-12 * nu.back() && (step == 0.0 || d < step)) step = d;
  }
  if (step == 0.0) return 0;
  const double period = 1.0 / step;
  const double n_real = period / dx;
  const double n_round = std::round(n_real);
  if (n_round < 2.0 || n_round > 1e8 || std::abs(n_real - n_round) > 1e-6 * n_round) return 0;
  const auto n = static_cast<std::size_t>(n_round);
  for (double f : nu) {
    const double k = f * period;
    if (std::abs(k - std::round(k)) > 1e-6 || std::round(k) >= 0.5 * n_round) return 0;
  }
  return n;
}

std::array<std::vector<double>, 4> sample_derivatives_fft(const std::vector<ProfileComponent>& comps, double x0,
                                                          double dx, std::size_t count, std::size_t n) {
  const double period = static_cast<double>(n) * dx;
  std::array<std::vector<double>, 4> out;
  // Bin k holds (n/2) A e^{i theta} so the inverse gives A cos(2 pi k i / n + theta);
  // theta absorbs the grid offset and the quarter-turn from sin to cos.
  std::vector<std::complex<double>> base(n / 2 + 1, {0.0, 0.0});
  for (const auto& c : comps) {
    const auto k = static_cast<std::size_t>(std::llround(c.nu * period));
    const double theta = 2.0 * pi * c.nu * x0 + c.phase - 0.5 * pi;
    base[k] += std::polar(0.5 * static_cast<double>(n) * c.amplitude_mm, theta);
  }
  for (int order = 0; order < 4; ++order) {
    std::vector<std::complex<double>> bins(base.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
      const double w = 2.0 * pi * static_cast<double>(k) / period;
      bins[k] = base[k] * std::pow(std::complex<double>(0.0, w), order);
    }
    const auto one = fft::inverse_real(bins, n);
    auto& v = out[static_cast<std::size_t>(order)];
    v.resize(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = one[i % n];
  }
  return out;
}

}  // namespace

std::string to_string(ProfileChannel c) {
  switch (c) {
    case ProfileChannel::z_left: return "z_left";
    case ProfileChannel::z_right: return "z_right";
    case ProfileChannel::y_left: return "y_left";
    case ProfileChannel::y_right: return "y_right";
  }
  return {};
}

std::array<std::vector<double>, 4> sample_derivatives(const std::vector<ProfileComponent>& components, double x0_m,
                                                      double dx_m, std::size_t count) {
  if (const auto n = common_period_samples(components, dx_m); n > 0)
    return sample_derivatives_fft(components, x0_m, dx_m, count, n);
  std::array<std::vector<double>, 4> out;
  for (auto& v : out) v.assign(count, 0.0);
  const auto blocks = static_cast<std::ptrdiff_t>((count + kReseedInterval - 1) / kReseedInterval);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReseedInterval;
    const std::size_t end = std::min(count, begin + kReseedInterval);
    for (const auto& c : components) {
      const double w = 2.0 * pi * c.nu;
      const double a = c.amplitude_mm;
      std::complex<double> phasor = std::polar(1.0, w * (x0_m + static_cast<double>(begin) * dx_m) + c.phase);
      const std::complex<double> step = std::polar(1.0, w * dx_m);
      for (std::size_t i = begin; i < end; ++i) {
        const double s = phasor.imag();
        const double co = phasor.real();
        out[0][i] += a * s;
        out[1][i] += a * w * co;
        out[2][i] -= a * w * w * s;
        out[3][i] -= a * w * w * w * co;
        phasor *= step;
      }
    }
  }
  return out;
}

double TrackProfile::evaluate(ProfileChannel c, double x_m, int order) const {
  require(order >= 0 && order <= 3, "TrackProfile::evaluate: derivative order must be 0..3");
  return evaluate_components(components[static_cast<std::size_t>(c)], x_m, order);
}

SpatialSeries TrackProfile::sample(ProfileChannel c, double start_m, double spacing_m, std::size_t count) const {
  auto d = sample_derivatives(components[static_cast<std::size_t>(c)], start_m, spacing_m, count);
  return SpatialSeries::dense(std::move(d[0]), spacing_m, start_m, to_string(c), "mm");
}

TrackProfile synth_profile(double length_m, const ProfileSpec& spec, std::uint64_t seed, const ProfileOptions& options) {
  require(std::isfinite(length_m) && length_m > 0.0, "synth_profile: length must be positive");
  require(options.fine_spacing_m > 0.0 && options.fine_spacing_m <= 0.05,
          "synth_profile: fine grid spacing must be in (0, 0.05] m");
  require(options.lr_correlation >= -1.0 && options.lr_correlation <= 1.0,
          "synth_profile: rail correlation must lie in [-1, 1]");

  TrackProfile p;
  p.length_m = length_m;
  p.fine_spacing_m = options.fine_spacing_m;

  if (const auto* sines = std::get_if<SinusoidSpec>(&spec)) {
    require(!sines->components.empty(), "synth_profile: empty sinusoid specification");
    for (const auto& c : sines->components) {
      require(c.nu > 0.0 && c.nu <= 10.0, "synth_profile: spatial frequency must lie in (0, 10] cycles/m");
      require(std::isfinite(c.amplitude_mm) && std::isfinite(c.phase), "synth_profile: non-finite component");
    }
    for (auto& ch : p.components) ch = sines->components;
  } else {
    const auto& noise = std::get<FilteredNoiseSpec>(spec);
    require(noise.nu_low > 0.0 && noise.nu_high <= 10.0 && noise.nu_low < noise.nu_high,
            "synth_profile: noise band must satisfy 0 < nu_low < nu_high <= 10 cycles/m");
    require(noise.rms_mm > 0.0, "synth_profile: target RMS must be positive");
    std::mt19937_64 rng(seed);
    const double rho = options.lr_correlation;
    const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (std::size_t axis = 0; axis < 2; ++axis) {
      auto left = random_multisine(length_m, noise, rng);
      require(!left.empty(), "synth_profile: noise band contains no frequency on the 1/length grid");
      auto independent = random_multisine(length_m, noise, rng);
      std::vector<ProfileComponent> right = left;
      scale(right, rho);
      scale(independent, rho_c);
      right.insert(right.end(), independent.begin(), independent.end());
      p.components[2 * axis] = std::move(left);
      p.components[2 * axis + 1] = std::move(right);
    }
  }

  const auto count = static_cast<std::size_t>(std::floor(length_m / p.fine_spacing_m + 1e-9)) + 1;
  for (std::size_t c = 0; c < 4; ++c) {
    auto d = sample_derivatives(p.components[c], 0.0, p.fine_spacing_m, count);
    if (std::holds_alternative<FilteredNoiseSpec>(spec)) {
      const double target = std::get<FilteredNoiseSpec>(spec).rms_mm;
      const double factor = target / rms_of(d[0]);
      scale(p.components[c], factor);
      for (double& v : d[0]) v *= factor;
    }
    p.sampled[c] = std::move(d[0]);
    const double peak = std::abs(*std::max_element(p.sampled[c].begin(), p.sampled[c].end(),
                                                   [](double a, double b) { return std::abs(a) < std::abs(b); }));
    require(peak <= options.max_abs_mm, "synth_profile: deviation of " + std::to_string(peak) + " mm exceeds the " +
                                            std::to_string(options.max_abs_mm) + " mm bound");
  }
  return p;
}

// ----------------------------------------------------------------- sensors

std::string to_string(SensorLocation l) {
  switch (l) {
    case SensorLocation::carbody: return "carbody";
    case SensorLocation::bogie: return "bogie";
    case SensorLocation::axlebox: return "axlebox";
  }
  return {};
}

SensorLocation sensor_location_from_string(const std::string& s) {
  if (s == "carbody") return SensorLocation::carbody;
  if (s == "bogie") return SensorLocation::bogie;
  if (s == "axlebox") return SensorLocation::axlebox;
  fail(ErrorCode::invalid_argument, "unknown sensor location '" + s + "'");
}

SensorSpec catalogue_sensor(SensorLocation location, SensorTechnology technology) {
  SensorSpec s;
  s.location = location;
  if (technology == SensorTechnology::mems) {
    switch (location) {
      case SensorLocation::carbody: s.range_g = 3.0; s.noise_floor_ug_sqrtHz = 150.0; break;
      case SensorLocation::bogie: s.range_g = 16.0; s.noise_floor_ug_sqrtHz = 300.0; break;
      case SensorLocation::axlebox: s.range_g = 200.0; s.noise_floor_ug_sqrtHz = 2700.0; break;
    }
  } else if (location == SensorLocation::axlebox) {
    s.range_g = 500.0;
    s.noise_floor_ug_sqrtHz = 16.0;
  } else {
    s.range_g = 50.0;
    s.noise_floor_ug_sqrtHz = 3.0;
  }
  s.name = to_string(location) + (technology == SensorTechnology::mems ? "-mems" : "-iepe");
  return s;
}

SensorSpec catalogue_sensor(const std::string& name) {
  const auto dash = name.rfind('-');
  require(dash != std::string::npos, "unknown sensor '" + name + "' (expected e.g. bogie-mems)");
  const std::string tech = name.substr(dash + 1);
  require(tech == "mems" || tech == "iepe", "unknown sensor technology in '" + name + "'");
  return catalogue_sensor(sensor_location_from_string(name.substr(0, dash)),
                          tech == "mems" ? SensorTechnology::mems : SensorTechnology::iepe);
}

double noise_sigma_mps2(double noise_floor_ug_sqrtHz, double sample_rate_hz) {
  return noise_floor_ug_sqrtHz * 1e-6 * kGravity * std::sqrt(0.5 * sample_rate_hz);
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& channel_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : channel_id) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ h);
}

NoisyChannel add_sensor_noise(const TimeSeries& ts, const SensorSpec& spec, std::uint64_t seed) {
  require(spec.range_g > 0.0, "add_sensor_noise: range must be positive");
  require(spec.noise_floor_ug_sqrtHz >= 0.0, "add_sensor_noise: noise floor must be non-negative");
  std::vector<double> x(ts.samples().begin(), ts.samples().end());
  const double sigma = noise_sigma_mps2(spec.noise_floor_ug_sqrtHz, ts.sample_rate_hz());
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : x) v += noise(rng);
  }
  const double limit = spec.range_g * kGravity;
  std::vector<std::uint8_t> clipped(x.size(), 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > limit) {
      x[i] = std::copysign(limit, x[i]);
      clipped[i] = 1;
      ++count;
    }
  }
  return {ts.with_samples(std::move(x)), std::move(clipped), count};
}

// ---------------------------------------------------------------- SpeedPlan

SpeedPlan::SpeedPlan(std::vector<SpeedPoint> points) : points_(std::move(points)) {
  require(points_.size() >= 2, "SpeedPlan: at least two points required");
  require(points_.front().t_s == 0.0, "SpeedPlan: the plan must start at t = 0");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    require(std::isfinite(points_[i].v_mps) && points_[i].v_mps >= 0.0,
            "SpeedPlan: speed must be non-negative (point " + std::to_string(i) + ")");
    if (i > 0) require(points_[i].t_s > points_[i - 1].t_s, "SpeedPlan: times must be strictly increasing");
  }
  cumulative_.assign(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double dt = points_[i].t_s - points_[i - 1].t_s;
    cumulative_[i] = cumulative_[i - 1] + 0.5 * (points_[i].v_mps + points_[i - 1].v_mps) * dt;
  }
}

SpeedPlan SpeedPlan::constant(double v_mps, double duration_s) {
  return SpeedPlan({{0.0, v_mps}, {duration_s, v_mps}});
}

std::size_t SpeedPlan::segment(double t_s) const {
  const auto it = std::upper_bound(points_.begin(), points_.end(), t_s,
                                   [](double t, const SpeedPoint& p) { return t < p.t_s; });
  const auto idx = static_cast<std::size_t>(std::distance(points_.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, points_.size() - 2);
}

double SpeedPlan::acceleration(double t_s) const {
  const std::size_t i = segment(t_s);
  return (points_[i + 1].v_mps - points_[i].v_mps) / (points_[i + 1].t_s - points_[i].t_s);
}

double SpeedPlan::speed(double t_s) const {
  const std::size_t i = segment(t_s);
  return points_[i].v_mps + acceleration(t_s) * (t_s - points_[i].t_s);
}

double SpeedPlan::position(double t_s) const {
  const std::size_t i = segment(t_s);
  const double tau = t_s - points_[i].t_s;
  return cumulative_[i] + points_[i].v_mps * tau + 0.5 * acceleration(t_s) * tau * tau;
}

double SpeedPlan::time_at(double x_m) const {
  if (x_m <= 0.0) return 0.0;
  if (x_m > cumulative_.back() + 1e-9) {
    fail(ErrorCode::plan_too_short, "speed plan covers " + std::to_string(cumulative_.back()) +
                                        " m but the track needs " + std::to_string(x_m) + " m");
  }
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), x_m);
  auto i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, points_.size() - 2);
  const double dx = std::min(x_m, cumulative_.back()) - cumulative_[i];
  const double v = points_[i].v_mps;
  const double a = (points_[i + 1].v_mps - v) / (points_[i + 1].t_s - points_[i].t_s);
  const double disc = std::sqrt(std::max(0.0, v * v + 2.0 * a * dx));
  const double denom = v + disc;
  const double tau = denom > 0.0 ? 2.0 * dx / denom : 0.0;
  return points_[i].t_s + tau;
}

// -------------------------------------------------------------- simulation

std::string channel_name(SensorLocation location, Wheel wheel, Rail rail, SensorAxis axis) {
  return to_string(location) + (wheel == Wheel::front ? "-front-" : "-back-") + to_string(rail) +
         (axis == SensorAxis::vertical ? "-vertical" : "-lateral");
}

const TimeSeries& SimulatedRun::channel(const std::string& id) const {
  for (const auto& c : channels) {
    if (c.series.channel_id() == id) return c.series;
  }
  fail(ErrorCode::missing_channel, "simulated run has no channel '" + id + "'");
}

SimulatedRun simulate_run(const TrackProfile& profile, const SimConfig& config) {
  require(config.wheelbase_m > 0.0, "simulate_run: wheelbase must be positive");
  require(config.sample_rate_hz > 0.0 && config.sample_rate_hz <= 100000.0,
          "simulate_run: sample rate must lie in (0, 100 kHz]");
  const SpeedPlan& plan = config.speed_plan;
  const double end_time = plan.time_at(profile.length_m);
  const double fs = config.sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::ceil(end_time * fs - 1e-6));
  require(n >= 1, "simulate_run: run shorter than one sample");

  std::vector<double> speed(n), accel(n), x_front(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    speed[i] = plan.speed(t);
    accel[i] = plan.acceleration(t);
    x_front[i] = plan.position(t);
  }

  double nu_top = 0.0;
  for (const auto& c : profile.components) nu_top = std::max(nu_top, max_nu(c));
  const double h = std::min(0.01, 0.005 / std::max(nu_top, 1e-6));
  const double grid_lo = -config.wheelbase_m - 1.0;
  const auto grid_n = static_cast<std::size_t>(std::ceil((profile.length_m + 1.0 - grid_lo) / h)) + 2;
  const bool use_grid = grid_n < 2 * n;

  SimulatedRun run;
  run.duration_s = static_cast<double>(n) / fs;
  for (Wheel wheel : {Wheel::front, Wheel::back}) {
    const double offset = wheel == Wheel::front ? 0.0 : config.wheelbase_m;
    for (SensorAxis axis : {SensorAxis::vertical, SensorAxis::lateral}) {
      for (Rail rail : {Rail::left, Rail::right}) {
        const std::size_t pc = (axis == SensorAxis::vertical ? 0 : 2) + (rail == Rail::left ? 0 : 1);
        const auto& comps = profile.components[pc];
        HermiteTable table;
        if (use_grid) {
          table.x0 = grid_lo;
          table.h = h;
          table.d = sample_derivatives(comps, grid_lo, h, grid_n);
        }
        std::vector<double> a(n);
        const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < ni; ++i) {
          const double x = x_front[i] - offset;
          const double d1 = use_grid ? table.at(x, 1) : evaluate_components(comps, x, 1);
          const double d2 = use_grid ? table.at(x, 2) : evaluate_components(comps, x, 2);
          // mm -> m
          a[i] = 1e-3 * (d2 * speed[i] * speed[i] + d1 * accel[i]);
        }
        if (axis == SensorAxis::lateral && config.lateral_disturbance.amplitude_mps2 != 0.0) {
          const double w = 2.0 * std::numbers::pi * config.lateral_disturbance.frequency_hz;
          for (std::size_t i = 0; i < n; ++i) {
            a[i] += config.lateral_disturbance.amplitude_mps2 * std::sin(w * static_cast<double>(i) / fs);
          }
        }
        TimeSeries ts(std::move(a), fs, 0.0, channel_name(config.sensor.location, wheel, rail, axis),
                      SignalKind::acceleration);
        run.channels.push_back({std::move(ts), wheel, rail, axis});
      }
    }
  }
  return run;
}

TimeSeries inject_impulses(const TimeSeries& ts, const SpeedPlan& plan, double offset_m,
                           const std::vector<ImpulseEvent>& events) {
  if (events.empty()) return ts;
  std::vector<double> x(ts.samples().begin(), ts.samples().end());
  const double fs = ts.sample_rate_hz();
  for (const auto& e : events) {
    require(e.duration_ms > 0.0, "inject_impulses: duration must be positive");
    const double target = e.position_m + offset_m;
    if (target < 0.0 || target > plan.total_distance_m()) continue;
    const double t0 = plan.time_at(target) - ts.start_time_s();
    const double width = e.duration_ms * 1e-3;
    const double peak = e.amplitude_g * kGravity;
    const auto first = static_cast<long>(std::ceil((t0 - 0.5 * width) * fs));
    const auto last = static_cast<long>(std::floor((t0 + 0.5 * width) * fs));
    for (long i = std::max(0L, first); i <= last && i < static_cast<long>(x.size()); ++i) {
      const double u = (static_cast<double>(i) / fs - t0) / width;
      x[static_cast<std::size_t>(i)] += peak * 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * u));
    }
  }
  return ts.with_samples(std::move(x));
}

std::vector<NoisyChannel> sense(const SimulatedRun& run, const SimConfig& config) {
  std::vector<NoisyChannel> out;
  out.reserve(run.channels.size());
  for (const auto& c : run.channels) {
    TimeSeries ts = c.series;
    if (c.axis == SensorAxis::vertical) {
      // Wheel positions are x_front - offset, so the event is met when x_front = p + offset.
      const double offset = c.wheel == Wheel::front ? 0.0 : config.wheelbase_m;
      ts = inject_impulses(ts, config.speed_plan, offset, config.impulse_events);
    }
    out.push_back(add_sensor_noise(ts, config.sensor, derive_seed(config.rng_seed, ts.channel_id())));
  }
  return out;
}

TrcTable ground_truth(const TrackProfile& profile, const SpeedPlan& plan, const std::vector<double>& va_chords_m,
                      const std::vector<double>& ha_chords_m, double spacing_m) {
  TrcTable t;
  t.spacing_m = spacing_m;
  t.start_m = 0.0;
  t.rows = static_cast<std::size_t>(std::floor(profile.length_m / spacing_m + 1e-9)) + 1;

  std::vector<double> speed(t.rows);
  for (std::size_t i = 0; i < t.rows; ++i) speed[i] = plan.speed(plan.time_at(std::min(t.distance(i), plan.total_distance_m())));
  t.add(SpatialSeries::dense(std::move(speed), spacing_m, 0.0, "speed_mps", "m/s"));

  auto add_alignment = [&](AlignmentAxis axis, double d) {
    const ChordSpec chord(d, spacing_m);
    const std::size_t h = chord.half_span_samples();
    for (Rail rail : {Rail::left, Rail::right}) {
      const auto pc = static_cast<ProfileChannel>((axis == AlignmentAxis::vertical ? 0 : 2) + (rail == Rail::left ? 0 : 1));
      const SpatialSeries z = profile.sample(pc, -static_cast<double>(h) * spacing_m, spacing_m, t.rows + 2 * h);
      const AlignmentSeries va = chord_alignment(z, chord, axis, rail);
      std::vector<double> values(va.values_mm.begin() + static_cast<std::ptrdiff_t>(h),
                                 va.values_mm.begin() + static_cast<std::ptrdiff_t>(h + t.rows));
      t.add(SpatialSeries::dense(std::move(values), spacing_m, 0.0, va.label(), "mm"));
    }
  };
  for (double d : va_chords_m) add_alignment(AlignmentAxis::vertical, d);
  for (double d : ha_chords_m) add_alignment(AlignmentAxis::horizontal, d);
  t.metadata["source"] = "synthesizer ground truth";
  return t;
}

}  // namespace trackgeom
