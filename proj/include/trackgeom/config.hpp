#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackgeom/synth.hpp"

namespace trackgeom {

/// Everything cmd_simulate needs. Loaded from JSON; unknown keys are rejected
/// so that typos do not silently fall back to defaults.
struct RunConfig {
  double length_m = 1000.0;
  ProfileSpec profile = FilteredNoiseSpec{};
  ProfileOptions profile_options{};
  SimConfig sim{};
  /// Record files are cut into blocks of this many seconds.
  double block_s = 10.0;
  /// Optional map anchor; a straight east-bound line is generated when empty.
  std::vector<GeoPoint> geo_polyline;
};

RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Straight polyline heading east from origin, long enough for length_m.
std::vector<GeoPoint> straight_polyline(GeoPoint origin, double length_m, std::size_t vertices = 11);

nlohmann::json profile_to_json(const TrackProfile& profile);
TrackProfile profile_from_json(const nlohmann::json& j);

}  // namespace trackgeom
