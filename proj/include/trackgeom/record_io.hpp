#pragma once

// Record file layout: one line of UTF-8 JSON (the header, terminated by '\n')
// followed by sample_count little-endian IEEE-754 doubles.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackgeom/time_series.hpp"

namespace trackgeom::io {

inline constexpr const char* kRecordFormat = "trackgeom-record";
inline constexpr int kRecordVersion = 1;
inline constexpr const char* kRecordExtension = ".rec";

struct Record {
  TimeSeries series;
  std::string sensor;          // catalogue name of the sensor, may be empty
  nlohmann::json parameters;   // generating parameters, echoed verbatim
};

std::string units_for(SignalKind kind);

std::string encode_record(const Record& record);
Record decode_record(const std::string& bytes, const std::string& origin = "<memory>");

void write_record(const std::filesystem::path& path, const Record& record);
Record read_record(const std::filesystem::path& path);

/// All *.rec files of a directory, grouped by channel and ordered by start time.
std::map<std::string, std::vector<TimeSeries>> read_record_dir(const std::filesystem::path& dir);

}  // namespace trackgeom::io
