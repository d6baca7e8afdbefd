#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "trackgeom/error.hpp"
#include "trackgeom/geometry.hpp"

using namespace trackgeom;
using std::numbers::pi;

namespace {

template <class F>
SpatialSeries sampled(F f, std::size_t n, double start = 0.0, double spacing = 0.25) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(start + static_cast<double>(i) * spacing);
  return SpatialSeries::dense(std::move(v), spacing, start, "z", "mm");
}

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST(ChordSpec, GridRule) {
  EXPECT_EQ(ChordSpec(10.0).half_span_samples(), 20u);
  EXPECT_EQ(ChordSpec(35.0).half_span_samples(), 70u);
  EXPECT_EQ(ChordSpec(7.0).half_span_samples(), 14u);
  EXPECT_THROW(ChordSpec(7.1), Error);
  EXPECT_THROW(ChordSpec(0.25), Error);
  EXPECT_THROW(ChordSpec(-10.0), Error);
}

TEST(ChordAlignment, QuadraticGivesMinusDSquaredOverFour) {
  for (double d : {10.0, 35.0}) {
    const auto z = sampled([](double x) { return x * x; }, 2000);
    const auto va = chord_alignment(z, ChordSpec(d));
    const std::size_t h = ChordSpec(d).half_span_samples();
    for (std::size_t i = 0; i < va.size(); ++i) {
      if (i < h || i + h >= va.size()) {
        EXPECT_FALSE(va.valid[i]);
      } else {
        ASSERT_TRUE(va.valid[i]);
        EXPECT_NEAR(va.values_mm[i], -d * d / 4.0, 1e-9 * d * d * 1000);
      }
    }
  }
}

TEST(ChordAlignment, AffineIsZero) {
  const auto z = sampled([](double x) { return 3.0 - 0.7 * x; }, 1000, 12.5);
  const auto va = chord_alignment(z, ChordSpec(10.0));
  for (std::size_t i = 20; i + 20 < va.size(); ++i) EXPECT_NEAR(va.values_mm[i], 0.0, 1e-12);
}

TEST(ChordAlignment, EvenMultiplesVanish) {
  for (double d : {10.0, 35.0}) {
    for (int k = 1; k <= 3; ++k) {
      const double nu = 2.0 * k / d;
      const auto z = sampled([&](double x) { return std::sin(2 * pi * nu * x); }, 4000);
      const auto va = chord_alignment(z, ChordSpec(d));
      for (std::size_t i = 0; i < va.size(); ++i) {
        if (va.valid[i]) EXPECT_LT(std::abs(va.values_mm[i]), 1e-9);
      }
    }
  }
}

TEST(ChordAlignment, InvalidInputsPropagate) {
  auto z = sampled([](double x) { return x; }, 200);
  z.valid[100] = 0;
  const auto va = chord_alignment(z, ChordSpec(10.0));
  EXPECT_FALSE(va.valid[100]);
  EXPECT_FALSE(va.valid[80]);
  EXPECT_FALSE(va.valid[120]);
  EXPECT_TRUE(va.valid[101]);
  EXPECT_TRUE(va.valid[79]);
}

TEST(ChordAlignment, Errors) {
  const auto z = sampled([](double x) { return x; }, 40);
  try {
    chord_alignment(z, ChordSpec(10.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::too_short);
  }
  const auto coarse = sampled([](double x) { return x; }, 400, 0.0, 0.5);
  try {
    chord_alignment(coarse, ChordSpec(10.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(ChordAlignment, LinearAndShiftEquivariant) {
  const auto a = random_values(600, 1);
  const auto b = random_values(600, 2);
  std::vector<double> combo(600);
  for (std::size_t i = 0; i < 600; ++i) combo[i] = 2.0 * a[i] - 0.5 * b[i];
  const auto ca = chord_alignment(SpatialSeries::dense(a, 0.25, 0, "a", "mm"), ChordSpec(10));
  const auto cb = chord_alignment(SpatialSeries::dense(b, 0.25, 0, "b", "mm"), ChordSpec(10));
  const auto cc = chord_alignment(SpatialSeries::dense(combo, 0.25, 0, "c", "mm"), ChordSpec(10));
  for (std::size_t i = 20; i + 20 < 600; ++i) {
    EXPECT_NEAR(cc.values_mm[i], 2.0 * ca.values_mm[i] - 0.5 * cb.values_mm[i], 1e-12);
  }
  std::vector<double> shifted(a.begin() + 7, a.end());
  const auto cs = chord_alignment(SpatialSeries::dense(shifted, 0.25, 0, "s", "mm"), ChordSpec(10));
  for (std::size_t i = 20; i + 20 < shifted.size(); ++i) EXPECT_EQ(cs.values_mm[i], ca.values_mm[i + 7]);
}

TEST(ChordAlignment, LabelsAndSpatialView) {
  const auto z = sampled([](double x) { return x; }, 400);
  const auto va = chord_alignment(z, ChordSpec(35.0), AlignmentAxis::vertical, Rail::right);
  EXPECT_EQ(va.label(), "VA35_right_mm");
  const auto ha = chord_alignment(z, ChordSpec(10.0), AlignmentAxis::horizontal, Rail::left);
  EXPECT_EQ(ha.label(), "HA10_left_mm");
  EXPECT_EQ(ha.as_spatial().channel_id, "HA10_left_mm");
}

TEST(TransferFunction, ZerosAndMaxima) {
  const ChordSpec c(10.0);
  EXPECT_EQ(transfer_function(c, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(transfer_function(c, 0.1), 2.0);
  EXPECT_NEAR(transfer_function(c, 0.2), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(transfer_function(c, 0.3), 2.0);
  for (double nu = 0; nu < 2; nu += 0.0137) {
    EXPECT_GE(transfer_function(c, nu), 0.0);
    EXPECT_LE(transfer_function(c, nu), 2.0);
  }
}

TEST(SelectCutoff, PublishedValuesAndRule) {
  EXPECT_EQ(select_cutoff(ChordSpec(10.0), 3.0), 0.3);
  EXPECT_EQ(select_cutoff(ChordSpec(35.0), 3.0), 0.1);
  EXPECT_DOUBLE_EQ(select_cutoff(ChordSpec(20.0), 3.0), 0.15);
  EXPECT_DOUBLE_EQ(select_cutoff(ChordSpec(10.0), 6.0), 0.6);
  EXPECT_THROW(select_cutoff(ChordSpec(10.0), 0.0), Error);
}

TEST(SelectCutoff, BelowFirstMaximumForFasterRuns) {
  // first maximum of H at speed v sits at f = v / d; the rule value v_ref / d
  // is at or below it for v >= v_ref. The published 35 m value (0.1 Hz) is a
  // documented exception: it sits above 3 / 35 Hz.
  for (double d : {5.0, 10.0, 20.0, 40.0, 50.0}) {
    const double fc = select_cutoff(ChordSpec(d), 3.0);
    for (double v = 3.0; v <= 30.0; v += 0.5) EXPECT_LE(fc, v / d + 1e-12) << d << " " << v;
  }
}

TEST(WindowedMax, ConstantAndDefinition) {
  const auto c = SpatialSeries::dense(std::vector<double>(4000, 2.5), 0.25, 0.0, "c", "mm");
  const auto wc = windowed_max(c, 100.0);
  ASSERT_EQ(wc.size(), 10u);
  for (const auto& w : wc.windows) {
    EXPECT_EQ(w.value, 2.5);
    EXPECT_TRUE(w.valid);
    EXPECT_EQ(w.valid_fraction, 1.0);
  }
  const auto s = SpatialSeries::dense({1.0, -5.0, 3.0}, 0.25, 0.0, "s", "mm");
  EXPECT_EQ(windowed_max(s, 0.75).windows[0].value, 5.0);
  WindowOptions signed_mode;
  signed_mode.mode = MaxMode::max_signed;
  EXPECT_EQ(windowed_max(s, 0.75, signed_mode).windows[0].value, 3.0);
  EXPECT_THROW(windowed_max(s, 0.1), Error);
}

TEST(WindowedMax, BruteForceForAllWindowSizes) {
  auto s = SpatialSeries::dense(random_values(4000, 9), 0.25, 0.0, "r", "mm");
  for (std::size_t i = 0; i < s.size(); i += 13) s.valid[i] = 0;
  for (std::size_t wsamp : {1u, 3u, 80u, 400u, 999u, 4000u}) {
    const double wm = static_cast<double>(wsamp) * 0.25;
    const auto ws = windowed_max(s, wm);
    ASSERT_EQ(ws.size(), (s.size() + wsamp - 1) / wsamp);
    for (std::size_t k = 0; k < ws.size(); ++k) {
      double best = -1;
      std::size_t valid = 0;
      for (std::size_t i = k * wsamp; i < std::min(s.size(), (k + 1) * wsamp); ++i) {
        if (!s.valid[i]) continue;
        best = std::max(best, std::abs(s.values[i]));
        ++valid;
      }
      if (valid > 0) EXPECT_EQ(ws.windows[k].value, best);
      EXPECT_DOUBLE_EQ(ws.windows[k].window_start_m, static_cast<double>(k) * wm);
      EXPECT_DOUBLE_EQ(ws.windows[k].valid_fraction, static_cast<double>(valid) / static_cast<double>(wsamp));
    }
  }
}

TEST(WindowedMax, LowValidFractionFlagged) {
  auto s = SpatialSeries::dense(std::vector<double>(800, 1.0), 0.25, 0.0, "r", "mm");
  for (std::size_t i = 0; i < 250; ++i) s.valid[i] = 0;
  const auto ws = windowed_max(s, 100.0);
  EXPECT_FALSE(ws.windows[0].valid);
  EXPECT_TRUE(ws.windows[1].valid);
}

TEST(WindowedMax, AnchorAlignsBoundaries) {
  const auto s = SpatialSeries::dense(std::vector<double>(800, 1.0), 0.25, 30.0, "r", "mm");
  WindowOptions anchored;
  anchored.anchor_m = 0.0;
  const auto ws = windowed_max(s, 100.0, anchored);
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws.windows[0].window_start_m, 0.0);
  EXPECT_DOUBLE_EQ(ws.windows[0].valid_fraction, 0.7);
  EXPECT_EQ(ws.windows[2].window_start_m, 200.0);
  EXPECT_EQ(windowed_max(s, 100.0).windows[0].window_start_m, 30.0);
}

TEST(PsdSpatial, SinePowerAndZero) {
  const double nu0 = 0.125;
  const auto z = sampled([&](double x) { return std::sin(2 * pi * nu0 * x); }, 8192);
  const auto p = psd_spatial(z);
  const auto peak = std::max_element(p.density.begin(), p.density.end()) - p.density.begin();
  EXPECT_NEAR(p.nu_axis[static_cast<std::size_t>(peak)], nu0, p.bin_width());
  double power = 0;
  for (std::size_t k = 0; k < p.density.size(); ++k) {
    if (std::abs(p.nu_axis[k] - nu0) <= 3 * p.bin_width()) power += p.density[k] * p.bin_width();
  }
  EXPECT_NEAR(power, 0.5, 0.025);
  const auto zero = psd_spatial(SpatialSeries::dense(std::vector<double>(1024, 0.0), 0.25, 0, "z", "mm"));
  for (double d : zero.density) EXPECT_EQ(d, 0.0);
  try {
    psd_spatial(SpatialSeries::dense(std::vector<double>(100, 0.0), 0.25, 0, "z", "mm"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::too_short);
    EXPECT_NE(std::string(e.what()).find("512"), std::string::npos);
  }
}

TEST(PsdSpatial, ChordTransferRelationship) {
  // long random profile: PSD(VA)/PSD(z) tracks H^2 where PSD(z) is above its
  // median. Bins close to a zero of H are left out: there the 128 m segment
  // smears a steep H^2 across the main lobe and the ratio is leakage.
  const std::size_t n = 1 << 15;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ph(0, 2 * pi);
  std::vector<double> zv(n, 0.0);
  const double len = static_cast<double>(n) * 0.25;
  for (int k = 1;; k += 3) {
    const double nu = k / len;
    if (nu > 1.9) break;
    const double p = ph(rng);
    for (std::size_t i = 0; i < n; ++i) zv[i] += std::sin(2 * pi * nu * static_cast<double>(i) * 0.25 + p) / (1 + 10 * nu);
  }
  const auto z = SpatialSeries::dense(zv, 0.25, 0, "z", "mm");
  const ChordSpec chord(10.0);
  const auto va = chord_alignment(z, chord);
  const auto pz = psd_spatial(z);
  const auto pv = psd_spatial(va);
  std::vector<double> sorted = pz.density;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::size_t checked = 0;
  for (std::size_t k = 1; k < pz.density.size(); ++k) {
    if (pz.density[k] <= median) continue;
    const double h = transfer_function(chord, pz.nu_axis[k]);
    if (h < 0.5) continue;
    const double db = 10 * std::log10(pv.density[k] / pz.density[k] / (h * h));
    EXPECT_LT(std::abs(db), 1.5) << pz.nu_axis[k];
    ++checked;
  }
  EXPECT_GT(checked, 20u);
  // at nu = 1/d the ratio is 4 (6 dB)
  const auto k = static_cast<std::size_t>(std::lround(0.1 / pz.bin_width()));
  EXPECT_NEAR(10 * std::log10(pv.density[k] / pz.density[k]), 10 * std::log10(4.0), 1.0);
}
