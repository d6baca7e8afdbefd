#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trackgeom/error.hpp"
#include "trackgeom/pipeline.hpp"
#include "trackgeom/record_io.hpp"
#include "trackgeom/report_io.hpp"
#include "trackgeom/synth.hpp"
#include "trackgeom/trc_io.hpp"

using namespace trackgeom;
namespace fs = std::filesystem;

namespace {

// per process: ctest runs every test case as its own process, possibly in parallel
const fs::path kRoot = fs::temp_directory_path() / ("trackgeom_pipeline_" + std::to_string(::getpid()));

const char* kRunConfig = R"({
  "length_m": 1000,
  "profile": {"type": "filtered_noise", "band": [0.02, 0.5], "rms_mm": 3.0},
  "speed_plan": [{"t": 0, "v": 10}, {"t": 110, "v": 10}],
  "sensor": "bogie-mems",
  "seed": 42
})";

struct Run {
  int status = 0;
  std::string err;
};

Run cli(const std::string& args) {
  static int counter = 0;
  const fs::path err = kRoot / ("stderr_" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("\"") + TRACKGEOM_CLI + "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream f(err);
  std::stringstream ss;
  ss << f.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

class Pipeline : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
    std::ofstream(kRoot / "run.json") << kRunConfig;
    ASSERT_EQ(cli("simulate " + q(kRoot / "run.json") + " -o " + q(kRoot / "sim")).status, 0);
    ASSERT_EQ(cli("process " + q(kRoot / "sim" / "records") + " -o " + q(kRoot / "proc") + " --speed-file " +
                  q(kRoot / "sim" / "speed.csv"))
                  .status,
              0);
  }
  static void TearDownTestSuite() { fs::remove_all(kRoot); }
  static fs::path sim() { return kRoot / "sim"; }
  static fs::path proc() { return kRoot / "proc"; }
};

}  // namespace

TEST_F(Pipeline, SimulateWritesBlocksPerChannel) {
  std::map<std::string, int> per_channel;
  for (const auto& e : fs::directory_iterator(sim() / "records")) {
    const auto rec = io::read_record(e.path());
    ++per_channel[rec.series.channel_id()];
    EXPECT_EQ(rec.series.sample_rate_hz(), 2560.0);
    EXPECT_EQ(rec.sensor, "bogie-mems");
  }
  EXPECT_EQ(per_channel.size(), 8u);
  for (const auto& [id, n] : per_channel) EXPECT_EQ(n, 10) << id;
  for (const char* f : {"ground_truth.csv", "profile.json", "speed.csv", "polyline.geojson"})
    EXPECT_TRUE(fs::exists(sim() / f)) << f;
  const auto gt = io::read_trc(sim() / "ground_truth.csv");
  EXPECT_EQ(gt.at("VA10_left_mm").valid_count(), gt.rows);
}

TEST_F(Pipeline, SimulateIsByteDeterministic) {
  ASSERT_EQ(cli("simulate " + q(kRoot / "run.json") + " -o " + q(kRoot / "sim2")).status, 0);
  std::size_t compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(sim())) {
    if (!e.is_regular_file()) continue;
    const auto twin = kRoot / "sim2" / fs::relative(e.path(), sim());
    ASSERT_TRUE(fs::exists(twin)) << twin;
    EXPECT_EQ(slurp(e.path()), slurp(twin)) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 84u);

  ASSERT_EQ(cli("simulate " + q(kRoot / "run.json") + " -o " + q(kRoot / "sim3") + " --seed 43").status, 0);
  const auto a = io::read_record(sim() / "records" / "bogie-front-left-vertical_0000.rec");
  const auto b = io::read_record(kRoot / "sim3" / "records" / "bogie-front-left-vertical_0000.rec");
  EXPECT_NE(a.series.samples()[100], b.series.samples()[100]);
}

TEST_F(Pipeline, ProcessProducesGridAndWindows) {
  const auto est = io::read_trc(proc() / "estimated.csv");
  EXPECT_EQ(est.rows, 4000u);
  EXPECT_EQ(est.start_m, 0.0);
  for (const char* col : {"speed_mps", "VA10_left_mm", "VA10_right_mm", "VA35_left_mm", "HA10_left_mm"})
    EXPECT_NE(est.find(col), nullptr) << col;
  const auto params = nlohmann::json::parse(slurp(proc() / "parameters.json"));
  EXPECT_EQ(params["speed_source"], "external");
  for (const char* label : {"VA10_left_mm", "VA35_right_mm", "HA10_right_mm"}) {
    const auto w = io::read_windowed_stats(proc() / (std::string("windows_") + label + ".csv"));
    EXPECT_EQ(w.size(), 10u) << label;
  }
}

TEST_F(Pipeline, ProcessIsDeterministicAndCutoffOverrideMatchesRule) {
  const auto base = "process " + q(sim() / "records") + " --speed-file " + q(sim() / "speed.csv") + " --chord 10";
  ASSERT_EQ(cli(base + " -o " + q(kRoot / "p_default")).status, 0);
  ASSERT_EQ(cli(base + " --cutoff 0.3 -o " + q(kRoot / "p_cut")).status, 0);
  ASSERT_EQ(cli(base + " -o " + q(kRoot / "p_again")).status, 0);
  const auto a = io::read_trc(kRoot / "p_default" / "estimated.csv");
  const auto b = io::read_trc(kRoot / "p_cut" / "estimated.csv");
  EXPECT_EQ(a.at("VA10_left_mm").values, b.at("VA10_left_mm").values);
  EXPECT_EQ(a.at("HA10_right_mm").values, b.at("HA10_right_mm").values);
  EXPECT_EQ(slurp(kRoot / "p_default" / "estimated.csv"), slurp(kRoot / "p_again" / "estimated.csv"));
}

TEST_F(Pipeline, EstimatedSpeedPath) {
  ASSERT_EQ(cli("process " + q(sim() / "records") + " -o " + q(kRoot / "p_est") + " --chord 10").status, 0);
  const auto est = io::read_trc(kRoot / "p_est" / "estimated.csv");
  const auto& v = est.at("speed_mps");
  // the first estimation windows see the integration filter's start-up transient
  std::size_t good = 0, valid = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v.is_valid(i)) continue;
    ++valid;
    good += std::abs(v.values[i] - 10.0) < 0.5;
  }
  EXPECT_GE(static_cast<double>(good), 0.9 * static_cast<double>(valid));
  EXPECT_NEAR(static_cast<double>(est.rows), 4000.0, 40.0);
}

TEST_F(Pipeline, ChordValidation) {
  const auto base = "process " + q(sim() / "records") + " --speed-file " + q(sim() / "speed.csv");
  EXPECT_EQ(cli(base + " --chord 7 -o " + q(kRoot / "p7")).status, 0);
  EXPECT_NE(io::read_trc(kRoot / "p7" / "estimated.csv").find("VA7_left_mm"), nullptr);
  EXPECT_EQ(cli(base + " --chord 7.1 -o " + q(kRoot / "p71")).status, 2);
}

TEST_F(Pipeline, MissingChannelIsNamed) {
  const auto partial = kRoot / "partial";
  fs::create_directories(partial);
  for (const auto& e : fs::directory_iterator(sim() / "records"))
    if (e.path().filename().string().rfind("bogie-back-left-vertical", 0) != 0)
      fs::copy_file(e.path(), partial / e.path().filename(), fs::copy_options::overwrite_existing);
  const auto r = cli("process " + q(partial) + " -o " + q(kRoot / "p_missing"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("bogie-back-left-vertical"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("missing-channel"), std::string::npos) << r.err;
}

TEST_F(Pipeline, CompareAgainstItselfAndDisjoint) {
  const auto est = proc() / "estimated.csv";
  ASSERT_EQ(cli("compare " + q(est) + " " + q(est) + " -o " + q(kRoot / "self")).status, 0);
  const auto j = nlohmann::json::parse(slurp(kRoot / "self.json"));
  ASSERT_FALSE(j["reports"].empty());
  for (const auto& r : j["reports"]) {
    EXPECT_NEAR(r["pearson_r"].get<double>(), 1.0, 1e-12) << r["label"];
    EXPECT_EQ(r["applied_shift_m"].get<double>(), 0.0);
  }
  EXPECT_TRUE(fs::exists(kRoot / "self.csv"));

  auto far = io::read_trc(est);
  far.start_m += 5000.0;
  for (auto& c : far.columns) c.start_m += 5000.0;
  io::write_trc(kRoot / "far.csv", far);
  const auto r = cli("compare " + q(est) + " " + q(kRoot / "far.csv") + " -o " + q(kRoot / "far_cmp"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("no-overlap"), std::string::npos) << r.err;
}

TEST_F(Pipeline, CompareAgainstGroundTruth) {
  const auto r = cli("compare " + q(proc() / "estimated.csv") + " " + q(sim() / "ground_truth.csv") +
                     " --column VA10_left_mm -o " + q(kRoot / "gt"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(kRoot / "gt.json"));
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_GT(j["reports"][0]["pearson_r"].get<double>(), 0.8);
}

TEST_F(Pipeline, ExportGeojson) {
  const auto out = kRoot / "va10.geojson";
  ASSERT_EQ(cli("export-geojson " + q(proc() / "windows_VA10_left_mm.csv") + " " + q(sim() / "polyline.geojson") +
                " -o " + q(out))
                .status,
            0);
  const auto fc = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(fc["features"].size(), 10u);
}

TEST_F(Pipeline, ExitCodes) {
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("simulate /nonexistent.json -o " + q(kRoot / "x")).status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  std::ofstream(kRoot / "bad.json") << "{\"length_m\": 1000, \"speed_plan\": [{\"t\": 0, \"v\": -3}]}";
  const auto r = cli("simulate " + q(kRoot / "bad.json") + " -o " + q(kRoot / "x"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("bad.json:1"), std::string::npos) << r.err;
}

TEST(ProcessApi, MissingChannelError) {
  ProcessInputs in;
  in.channels.emplace("bogie-front-left-vertical",
                      TimeSeries(std::vector<double>(25600, 0.0), 2560.0, 0.0, "bogie-front-left-vertical",
                                 SignalKind::acceleration));
  try {
    process(in, ProcessOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_channel);
    EXPECT_NE(std::string(e.what()).find("bogie-"), std::string::npos);
  }
}

TEST(ProcessApi, RecordEdgesAreFlaggedUntilTheFilterSettles) {
  const auto profile = synth_profile(600.0, FilteredNoiseSpec{0.05, 0.5, 3.0}, 5);
  SimConfig sim;
  sim.speed_plan = SpeedPlan::constant(10.0, 70.0);
  sim.sensor.noise_floor_ug_sqrtHz = 0.0;
  const auto run = simulate_run(profile, sim);
  ProcessInputs in;
  for (const auto& c : run.channels) in.channels.emplace(c.series.channel_id(), c.series);
  std::vector<double> v(static_cast<std::size_t>(run.duration_s * kProcessRateHz) + 1, 10.0);
  in.speed = TimeSeries(v, kProcessRateHz, 0.0, "speed_mps", SignalKind::speed);
  ProcessOptions o;
  o.va_chords_m = {10.0};
  o.ha_chords_m = {10.0};
  const auto masked = process(in, o);
  o.edge_settle_cycles = 0.0;
  const auto raw = process(in, o);
  const auto& m = masked.estimated.at("VA10_left_mm");
  const auto& r = raw.estimated.at("VA10_left_mm");
  // 3 periods of 0.3 Hz = 10 s = 100 m at each end; chord edges add 5 m
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = m.position(i);
    EXPECT_EQ(r.is_valid(i), i >= 20 && i + 20 < r.size()) << x;
    if (x < 99.0 || x > 501.0) EXPECT_FALSE(m.is_valid(i)) << x;
    if (x > 106.0 && x < 494.0) {
      EXPECT_TRUE(m.is_valid(i)) << x;
      EXPECT_EQ(m.values[i], r.values[i]);
    }
  }
  EXPECT_EQ(masked.parameters["edge_settle_cycles"], 3.0);
}
