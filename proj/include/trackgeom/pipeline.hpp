#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackgeom/comparison.hpp"
#include "trackgeom/config.hpp"
#include "trackgeom/geometry.hpp"
#include "trackgeom/spatial.hpp"
#include "trackgeom/speed.hpp"
#include "trackgeom/trc.hpp"

namespace trackgeom {

inline constexpr double kProcessRateHz = 256.0;

struct ProcessOptions {
  std::vector<double> va_chords_m{10.0, 35.0};
  std::vector<double> ha_chords_m{10.0};
  /// Replaces select_cutoff for every chord when set.
  std::optional<double> cutoff_hz;
  double window_m = 100.0;
  double vref_mps = kReferenceLowSpeedMps;
  double wheelbase_m = kDefaultWheelbaseM;
  double spacing_m = kDefaultSpacingM;
  double target_rate_hz = kProcessRateHz;
  /// Channel prefix, e.g. "bogie"; detected from the channel ids when empty.
  std::string location;
  /// Rail whose front/back verticals feed the speed estimator.
  Rail speed_rail = Rail::left;
  /// Cutoff of the displacement pair used for delay estimation.
  double speed_cutoff_hz = 0.3;
  DelayOptions delay{};
  SpeedOptions speed{};
  StationaryRule stationary{};
  /// Displacement within this many periods of the cutoff of either record end
  /// is flagged invalid: the integration filter has not settled there.
  double edge_settle_cycles = 3.0;
  /// Distance of the first sample. Ignored when a reference speed is given.
  double x0_m = 0.0;
};

struct ProcessInputs {
  /// Merged channels by id.
  std::map<std::string, TimeSeries> channels;
  /// External speed against time; bypasses the estimator.
  std::optional<TimeSeries> speed;
  /// Reference speed against distance for x0 alignment.
  std::optional<SpatialSeries> reference_speed;
};

struct ProcessResult {
  /// speed_mps plus one column per alignment series, on the common grid.
  TrcTable estimated;
  /// Displacement (mm) per rail, axis and cutoff before the chord stage.
  std::vector<SpatialSeries> displacement;
  std::vector<AlignmentSeries> alignments;
  std::vector<WindowedStats> windows;
  SpeedProfile speed;
  double x0_m = 0.0;
  std::string x0_source;
  nlohmann::json parameters;
};

ProcessResult process(const ProcessInputs& inputs, const ProcessOptions& options);

/// Merges record parts per channel (gap bridging as in merge_records).
std::map<std::string, TimeSeries> merge_channels(const std::map<std::string, std::vector<TimeSeries>>& parts);

/// Speed file: CSV "time_s,speed_mps" as written by cmd_simulate.
TimeSeries read_speed_csv(const std::filesystem::path& path);
void write_speed_csv(const std::filesystem::path& path, const TimeSeries& speed);

// ---------------------------------------------------------------- commands

struct SimulateSummary {
  std::size_t record_files = 0;
  std::size_t channels = 0;
  double duration_s = 0.0;
};

SimulateSummary cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir);

struct ProcessPaths {
  std::filesystem::path records;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> speed_file;
  std::optional<std::filesystem::path> reference_trc;
};

ProcessResult cmd_process(const ProcessPaths& paths, const ProcessOptions& options);

/// Compares every alignment column present in both tables.
std::vector<ComparisonReport> cmd_compare(const std::filesystem::path& estimated, const std::filesystem::path& reference,
                                          double window_m, double max_shift_m, const std::filesystem::path& out_prefix,
                                          const std::vector<std::string>& columns = {});

nlohmann::json cmd_export_geojson(const std::filesystem::path& windows, const std::filesystem::path& polyline,
                                  const std::vector<double>& thresholds, const std::filesystem::path& out,
                                  double origin_m = 0.0);

}  // namespace trackgeom
