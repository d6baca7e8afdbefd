// trackgeom: simulate, process, compare and map track geometry runs.
//
// Exit status: 0 success, 1 data error, 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trackgeom/config.hpp"
#include "trackgeom/error.hpp"
#include "trackgeom/pipeline.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kDataError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_reports(const std::vector<trackgeom::ComparisonReport>& reports) {
  for (const auto& r : reports) {
    std::printf("%-16s r=%.4f slope=%.4f intercept=%.4f windows=%zu shift=%.2f m\n", r.label.c_str(), r.pearson_r,
                r.slope, r.intercept, r.n_windows, r.applied_shift_m);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Track geometry from onboard accelerometers"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Synthesize a run: record files plus ground truth");
  std::string sim_config, sim_out;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("config", sim_config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("-o,--out", sim_out, "Output directory")->required();
  sim->add_option("--seed", sim_seed, "Override the configured seed");

  // process
  auto* proc = app.add_subcommand("process", "Estimate alignment from a directory of record files");
  std::string proc_records, proc_out, proc_speed, proc_ref, proc_location, proc_speed_rail = "left";
  std::vector<double> proc_chords;
  std::optional<double> proc_cutoff;
  trackgeom::ProcessOptions popt;
  proc->add_option("records", proc_records, "Directory of .rec files")->required()->check(CLI::ExistingDirectory);
  proc->add_option("-o,--out", proc_out, "Output directory")->required();
  proc->add_option("--chord", proc_chords, "Chord length(s) in m (default 10 and 35 vertical, 10 lateral)");
  proc->add_option("--cutoff", proc_cutoff, "High-pass cutoff override in Hz for every chord");
  proc->add_option("--window", popt.window_m, "Window length for maxima in m")->capture_default_str();
  proc->add_option("--vref", popt.vref_mps, "Reference low speed for the cutoff rule, m/s")->capture_default_str();
  proc->add_option("--wheelbase", popt.wheelbase_m, "Front/back sensor separation in m")->capture_default_str();
  proc->add_option("--speed-file", proc_speed, "External speed CSV (time_s,speed_mps); bypasses the estimator")
      ->check(CLI::ExistingFile);
  proc->add_option("--reference", proc_ref, "Reference table with speed_mps for distance alignment")
      ->check(CLI::ExistingFile);
  proc->add_option("--edge-settle", popt.edge_settle_cycles,
                   "Cutoff periods flagged invalid at each record end (0 keeps everything)")
      ->capture_default_str();
  proc->add_option("--x0", popt.x0_m, "Distance of the first sample in m")->capture_default_str();
  proc->add_option("--location", proc_location, "Sensor location prefix (default: detected)");
  proc->add_option("--speed-rail", proc_speed_rail, "Rail used for speed estimation")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();

  // compare
  auto* cmp = app.add_subcommand("compare", "Correlate windowed maxima of two tables");
  std::string cmp_est, cmp_ref, cmp_out;
  double cmp_window = 100.0, cmp_shift = 0.0;
  std::vector<std::string> cmp_columns;
  cmp->add_option("estimated", cmp_est, "Estimated table")->required()->check(CLI::ExistingFile);
  cmp->add_option("reference", cmp_ref, "Reference table")->required()->check(CLI::ExistingFile);
  cmp->add_option("--window", cmp_window, "Window length in m")->capture_default_str();
  cmp->add_option("--max-shift", cmp_shift, "Co-registration search range in m")->capture_default_str();
  cmp->add_option("--column", cmp_columns, "Columns to compare (default: all shared alignment columns)");
  cmp->add_option("-o,--out", cmp_out, "Output prefix for .csv and .json reports");

  // export-geojson
  auto* geo = app.add_subcommand("export-geojson", "Map windowed maxima along a polyline");
  std::string geo_windows, geo_polyline, geo_out;
  std::vector<double> geo_thresholds{2.0, 4.0, 6.0};
  double geo_origin = 0.0;
  geo->add_option("windows", geo_windows, "Windowed maxima CSV")->required()->check(CLI::ExistingFile);
  geo->add_option("polyline", geo_polyline, "GeoJSON LineString or lat,lon CSV")->required()->check(CLI::ExistingFile);
  geo->add_option("--thresholds", geo_thresholds, "Ascending severity thresholds in mm")->capture_default_str();
  geo->add_option("--origin", geo_origin, "Track distance at the start of the polyline")->capture_default_str();
  geo->add_option("-o,--out", geo_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*sim) {
      trackgeom::RunConfig cfg = trackgeom::load_config(sim_config);
      if (sim_seed) cfg.sim.rng_seed = *sim_seed;
      const auto s = trackgeom::cmd_simulate(cfg, sim_out);
      std::printf("wrote %zu record files for %zu channels (%.2f s)\n", s.record_files, s.channels, s.duration_s);
    } else if (*proc) {
      try {
        if (!proc_chords.empty()) popt.va_chords_m = popt.ha_chords_m = proc_chords;
        for (double d : popt.va_chords_m) (void)trackgeom::ChordSpec(d, popt.spacing_m);
        if (proc_cutoff && !(*proc_cutoff > 0.0)) throw UsageError("--cutoff must be positive");
        if (!(popt.window_m > 0.0)) throw UsageError("--window must be positive");
        if (!(popt.vref_mps > 0.0)) throw UsageError("--vref must be positive");
        if (!(popt.wheelbase_m > 0.0)) throw UsageError("--wheelbase must be positive");
        if (!(popt.edge_settle_cycles >= 0.0)) throw UsageError("--edge-settle must be non-negative");
      } catch (const trackgeom::Error& e) {
        throw UsageError(e.what());
      }
      popt.cutoff_hz = proc_cutoff;
      popt.location = proc_location;
      popt.speed_rail = proc_speed_rail == "right" ? trackgeom::Rail::right : trackgeom::Rail::left;
      trackgeom::ProcessPaths paths{proc_records, proc_out, std::nullopt, std::nullopt};
      if (!proc_speed.empty()) paths.speed_file = proc_speed;
      if (!proc_ref.empty()) paths.reference_trc = proc_ref;
      const auto res = trackgeom::cmd_process(paths, popt);
      std::printf("%zu grid points, %zu alignment series, x0 = %.3f m (%s)\n", res.estimated.rows,
                  res.alignments.size(), res.x0_m, res.x0_source.c_str());
      for (const auto& w : res.windows) std::printf("  %s: %zu windows of %g m\n", w.label.c_str(), w.size(), w.window_m);
    } else if (*cmp) {
      print_reports(trackgeom::cmd_compare(cmp_est, cmp_ref, cmp_window, cmp_shift, cmp_out, cmp_columns));
    } else if (*geo) {
      const auto fc = trackgeom::cmd_export_geojson(geo_windows, geo_polyline, geo_thresholds, geo_out, geo_origin);
      if (geo_out.empty()) std::cout << fc.dump() << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "trackgeom: " << e.what() << '\n';
    return kUsageError;
  } catch (const trackgeom::Error& e) {
    std::cerr << "trackgeom: " << trackgeom::to_string(e.code()) << ": " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "trackgeom: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
