#pragma once

// Distance-sampled CSV: '#'-prefixed comment lines (a format tag and one JSON
// metadata line), a header row starting with distance_m, then one row per
// grid point. Empty cells mark invalid samples. Values use 17 significant
// digits so a write/read cycle is lossless.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "trackgeom/trc.hpp"

namespace trackgeom::io {

void write_trc(std::ostream& out, const TrcTable& table);
TrcTable read_trc(std::istream& in, const std::string& origin = "<stream>");

void write_trc(const std::filesystem::path& path, const TrcTable& table);
TrcTable read_trc(const std::filesystem::path& path);

/// Shortest round-tripping text form of a double.
std::string format_double(double v);

}  // namespace trackgeom::io
