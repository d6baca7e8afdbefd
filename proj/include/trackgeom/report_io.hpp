#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackgeom/comparison.hpp"
#include "trackgeom/geometry.hpp"

namespace trackgeom::io {

nlohmann::json to_json(const ComparisonReport& report);

/// One CSV with a row per compared window, all reports stacked.
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonReport>& reports,
                          const nlohmann::json& parameters);
void write_comparison_json(std::ostream& out, const std::vector<ComparisonReport>& reports,
                           const nlohmann::json& parameters);

void write_windowed_stats(std::ostream& out, const WindowedStats& stats, const nlohmann::json& parameters);
WindowedStats read_windowed_stats(std::istream& in, const std::string& origin = "<stream>");
void write_windowed_stats(const std::filesystem::path& path, const WindowedStats& stats,
                          const nlohmann::json& parameters);
WindowedStats read_windowed_stats(const std::filesystem::path& path);

/// Plot-ready density table: nu_cycles_per_m plus one column per spectrum.
void write_psd_csv(std::ostream& out, const std::vector<std::string>& names, const std::vector<SpatialPSD>& spectra,
                   const nlohmann::json& parameters);

}  // namespace trackgeom::io
