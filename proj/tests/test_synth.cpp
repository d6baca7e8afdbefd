#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>

#include "trackgeom/error.hpp"
#include "trackgeom/signal.hpp"
#include "trackgeom/synth.hpp"

using namespace trackgeom;
using std::numbers::pi;

namespace {

double rms(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(a.size());
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

SimConfig quiet_config(double v, double seconds) {
  SimConfig c;
  c.speed_plan = SpeedPlan::constant(v, seconds);
  c.sample_rate_hz = 256.0;
  return c;
}

}  // namespace

TEST(SynthProfile, SingleSinusoidIsExact) {
  const auto p = synth_profile(500.0, SinusoidSpec{{{0.05, 5.0, 0.3}}}, 1);
  EXPECT_LE(p.fine_spacing_m, 0.05);
  ASSERT_EQ(p.z_left().size(), 10001u);
  for (std::size_t i = 0; i < p.z_left().size(); i += 97) {
    const double x = static_cast<double>(i) * p.fine_spacing_m;
    const double expected = 5.0 * std::sin(2 * pi * 0.05 * x + 0.3);
    EXPECT_NEAR(p.z_left()[i], expected, 1e-9);
    EXPECT_NEAR(p.evaluate(ProfileChannel::y_right, x), expected, 1e-9);
  }
  EXPECT_NEAR(p.evaluate(ProfileChannel::z_left, -2.5), 5.0 * std::sin(2 * pi * 0.05 * -2.5 + 0.3), 1e-12);
  EXPECT_NEAR(p.evaluate(ProfileChannel::z_left, 3.0, 2), -5.0 * std::pow(2 * pi * 0.05, 2) * std::sin(2 * pi * 0.15 + 0.3),
              1e-12);
}

TEST(SynthProfile, FilteredNoiseRmsAndDeterminism) {
  const FilteredNoiseSpec spec{0.02, 0.5, 3.0};
  const auto a = synth_profile(2000.0, spec, 7);
  const auto b = synth_profile(2000.0, spec, 7);
  const auto c = synth_profile(2000.0, spec, 8);
  for (std::size_t ch = 0; ch < 4; ++ch) EXPECT_NEAR(rms(a.sampled[ch]), 3.0, 0.05 * 3.0);
  EXPECT_EQ(a.z_left(), b.z_left());
  EXPECT_NE(a.z_left(), c.z_left());
  for (const auto& comps : a.components) {
    for (const auto& k : comps) {
      EXPECT_GE(k.nu, 0.02 - 1e-12);
      EXPECT_LE(k.nu, 0.5 + 1e-12);
    }
  }
}

TEST(SynthProfile, RailCorrelation) {
  const auto p = synth_profile(5000.0, FilteredNoiseSpec{0.02, 0.5, 3.0}, 3);
  EXPECT_NEAR(correlation(p.z_left(), p.z_right()), 0.7, 0.1);
  ProfileOptions independent;
  independent.lr_correlation = 0.0;
  const auto q = synth_profile(5000.0, FilteredNoiseSpec{0.02, 0.5, 3.0}, 3, independent);
  EXPECT_NEAR(correlation(q.z_left(), q.z_right()), 0.0, 0.1);
}

TEST(SynthProfile, Errors) {
  EXPECT_THROW(synth_profile(100.0, SinusoidSpec{}, 1), Error);
  EXPECT_THROW(synth_profile(0.0, SinusoidSpec{{{0.05, 5.0, 0.0}}}, 1), Error);
  EXPECT_THROW(synth_profile(100.0, SinusoidSpec{{{12.0, 5.0, 0.0}}}, 1), Error);
  EXPECT_THROW(synth_profile(100.0, SinusoidSpec{{{0.05, 80.0, 0.0}}}, 1), Error);  // beyond 50 mm
  EXPECT_THROW(synth_profile(100.0, FilteredNoiseSpec{0.5, 0.02, 3.0}, 1), Error);
}

TEST(SimulateRun, SinusoidChainRule) {
  const auto p = synth_profile(500.0, SinusoidSpec{{{0.05, 5.0, 0.0}}}, 1);
  const auto run = simulate_run(p, quiet_config(10.0, 60.0));
  ASSERT_EQ(run.channels.size(), 8u);
  const auto& a = run.channel("bogie-front-left-vertical");
  EXPECT_EQ(a.size(), static_cast<std::size_t>(50.0 * 256));
  EXPECT_DOUBLE_EQ(run.duration_s, 50.0);
  const double amp = std::pow(2 * pi * 0.5, 2) * 5e-3;
  EXPECT_NEAR(amp, 0.04935, 1e-5);
  for (std::size_t i = 0; i < a.size(); i += 37) {
    const double t = static_cast<double>(i) / 256.0;
    EXPECT_NEAR(a.samples()[i], -amp * std::sin(2 * pi * 0.5 * t), 1e-9);
  }
}

TEST(SimulateRun, BackIsDelayedFront) {
  const auto p = synth_profile(500.0, FilteredNoiseSpec{0.05, 0.5, 3.0}, 4);
  const auto run = simulate_run(p, quiet_config(10.0, 60.0));
  const auto& f = run.channel("bogie-front-right-vertical");
  const auto& b = run.channel("bogie-back-right-vertical");
  for (std::size_t i = 64; i < f.size(); i += 11) EXPECT_NEAR(b.samples()[i], f.samples()[i - 64], 1e-7);
}

TEST(SimulateRun, AccelerationTermWithRamp) {
  const auto p = synth_profile(300.0, SinusoidSpec{{{0.05, 5.0, 0.0}}}, 1);
  SimConfig c;
  c.sample_rate_hz = 256.0;
  c.speed_plan = SpeedPlan({{0.0, 5.0}, {30.0, 15.0}});
  const auto run = simulate_run(p, c);
  const auto& a = run.channel("bogie-front-left-vertical");
  const double w = 2 * pi * 0.05;
  for (std::size_t i = 0; i < a.size(); i += 53) {
    const double t = static_cast<double>(i) / 256.0;
    const double v = 5.0 + t / 3.0, x = 5.0 * t + t * t / 6.0;
    const double expected = 1e-3 * (-5.0 * w * w * std::sin(w * x) * v * v + 5.0 * w * std::cos(w * x) / 3.0);
    EXPECT_NEAR(a.samples()[i], expected, 1e-8);
  }
}

TEST(SimulateRun, FlatProfileAndShortPlan) {
  const auto flat = synth_profile(200.0, SinusoidSpec{{{0.05, 0.0, 0.0}}}, 1);
  for (const auto& ch : simulate_run(flat, quiet_config(10.0, 30.0)).channels) {
    for (double v : ch.series.samples()) EXPECT_EQ(v, 0.0);
  }
  try {
    simulate_run(flat, quiet_config(10.0, 10.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::plan_too_short);
  }
}

TEST(Sensors, CatalogueMatchesTable) {
  const auto check = [](SensorLocation l, SensorTechnology t, double range, double noise) {
    const auto s = catalogue_sensor(l, t);
    EXPECT_EQ(s.range_g, range);
    EXPECT_EQ(s.noise_floor_ug_sqrtHz, noise);
  };
  check(SensorLocation::carbody, SensorTechnology::mems, 3, 150);
  check(SensorLocation::bogie, SensorTechnology::mems, 16, 300);
  check(SensorLocation::axlebox, SensorTechnology::mems, 200, 2700);
  check(SensorLocation::carbody, SensorTechnology::iepe, 50, 3);
  check(SensorLocation::bogie, SensorTechnology::iepe, 50, 3);
  check(SensorLocation::axlebox, SensorTechnology::iepe, 500, 16);
  EXPECT_EQ(catalogue_sensor("axlebox-mems").range_g, 200.0);
  EXPECT_THROW(catalogue_sensor("wheel-mems"), Error);
}

TEST(Sensors, NoiseSigmaStatistics) {
  const double sigma = noise_sigma_mps2(300.0, 2560.0);
  EXPECT_NEAR(sigma, 300e-6 * 9.81 * std::sqrt(1280.0), 1e-15);
  EXPECT_NEAR(sigma, 0.1053, 1e-4);
  const TimeSeries zero(std::vector<double>(1000000, 0.0), 2560.0, 0.0, "x", SignalKind::acceleration);
  const auto noisy = add_sensor_noise(zero, catalogue_sensor("bogie-mems"), 99);
  EXPECT_NEAR(rms(noisy.series.samples()), sigma, 0.02 * sigma);
  EXPECT_EQ(noisy.clipped_count, 0u);
}

TEST(Sensors, NoiseFloorIsFlat) {
  const TimeSeries zero(std::vector<double>(1 << 19, 0.0), 2560.0, 0.0, "x", SignalKind::acceleration);
  const auto noisy = add_sensor_noise(zero, catalogue_sensor("bogie-mems"), 5);
  const auto p = welch_psd(noisy.series.samples(), 2560.0, WelchOptions{4096, 0.5});
  const double expected = std::pow(300e-6 * 9.81, 2);
  for (std::size_t k = 1; k + 1 < p.density.size(); k += 64) {
    EXPECT_LT(std::abs(10 * std::log10(p.density[k] / expected)), 1.0) << p.frequency[k];
  }
}

TEST(Sensors, ZeroNoiseAndClipping) {
  SensorSpec silent = catalogue_sensor("axlebox-mems");
  silent.noise_floor_ug_sqrtHz = 0.0;
  std::vector<double> x{0.1, -0.2, 250 * 9.81, -260 * 9.81, 3.0};
  const TimeSeries ts(x, 2560.0, 0.0, "x", SignalKind::acceleration);
  const auto out = add_sensor_noise(ts, silent, 1);
  EXPECT_EQ(out.series.samples()[0], 0.1);
  EXPECT_EQ(out.series.samples()[4], 3.0);
  EXPECT_DOUBLE_EQ(out.series.samples()[2], 200 * 9.81);
  EXPECT_DOUBLE_EQ(out.series.samples()[3], -200 * 9.81);
  EXPECT_EQ(out.clipped, (std::vector<std::uint8_t>{0, 0, 1, 1, 0}));
  EXPECT_EQ(out.clipped_count, 2u);
}

TEST(Sensors, DeterministicPerChannelSeeds) {
  EXPECT_EQ(derive_seed(1, "a"), derive_seed(1, "a"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  const auto p = synth_profile(200.0, FilteredNoiseSpec{0.05, 0.5, 3.0}, 4);
  SimConfig c = quiet_config(10.0, 30.0);
  const auto run = simulate_run(p, c);
  const auto a = sense(run, c);
  const auto b = sense(run, c);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].series, b[i].series);
  EXPECT_NE(a[0].series.samples()[10] - run.channels[0].series.samples()[10],
            a[1].series.samples()[10] - run.channels[1].series.samples()[10]);
}

TEST(Impulses, RaisedCosineAtWheelPassage) {
  const TimeSeries flat(std::vector<double>(2560 * 10, 0.0), 2560.0, 0.0, "x", SignalKind::acceleration);
  const auto plan = SpeedPlan::constant(10.0, 20.0);
  const auto front = inject_impulses(flat, plan, 0.0, {{50.0, 150.0, 5.0}});
  const auto back = inject_impulses(flat, plan, 2.5, {{50.0, 150.0, 5.0}});
  const auto peak_at = [](const TimeSeries& ts) {
    return static_cast<std::size_t>(std::max_element(ts.samples().begin(), ts.samples().end()) - ts.samples().begin());
  };
  EXPECT_EQ(peak_at(front), 2560u * 5);
  EXPECT_EQ(peak_at(back), 2560u * 5 + 640);
  EXPECT_NEAR(front.samples()[2560 * 5], 150 * 9.81, 1e-9);
  std::size_t nonzero = 0;
  for (double v : front.samples()) nonzero += v != 0.0;
  EXPECT_LE(nonzero, 13u);  // 5 ms at 2560 Hz
  EXPECT_GE(nonzero, 11u);
}

TEST(GroundTruth, ColumnsAndOracle) {
  const auto p = synth_profile(400.0, FilteredNoiseSpec{0.05, 0.5, 3.0}, 4);
  const auto plan = SpeedPlan::constant(10.0, 60.0);
  const auto t = ground_truth(p, plan);
  EXPECT_EQ(t.rows, 1601u);
  for (const auto& name : standard_trc_columns()) ASSERT_NE(t.find(name), nullptr) << name;
  const auto& va = t.at("VA10_left_mm");
  EXPECT_EQ(va.valid_count(), va.size());
  for (std::size_t i = 0; i < t.rows; i += 31) {
    const double x = t.distance(i);
    const double expected = p.evaluate(ProfileChannel::z_left, x) -
                            0.5 * (p.evaluate(ProfileChannel::z_left, x - 5) + p.evaluate(ProfileChannel::z_left, x + 5));
    EXPECT_NEAR(va.values[i], expected, 1e-9);
  }
  for (double v : t.at("speed_mps").values) EXPECT_DOUBLE_EQ(v, 10.0);
}
