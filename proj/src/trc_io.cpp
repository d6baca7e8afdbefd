#include "trackgeom/trc_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "trackgeom/error.hpp"

namespace trackgeom {

const SpatialSeries* TrcTable::find(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.channel_id == name) return &c;
  }
  return nullptr;
}

const SpatialSeries& TrcTable::at(const std::string& name) const {
  if (const auto* c = find(name)) return *c;
  fail(ErrorCode::missing_channel, "table has no column '" + name + "'");
}

void TrcTable::add(SpatialSeries column) {
  require(!column.channel_id.empty(), "TrcTable::add: column needs a name");
  require(find(column.channel_id) == nullptr, "TrcTable::add: duplicate column '" + column.channel_id + "'");
  if (columns.empty() && rows == 0) {
    rows = column.size();
    start_m = column.start_m;
    spacing_m = column.spacing_m;
  }
  require(column.size() == rows && std::abs(column.start_m - start_m) < 1e-9 &&
              std::abs(column.spacing_m - spacing_m) < 1e-12,
          "TrcTable::add: column '" + column.channel_id + "' is not on the table grid");
  if (column.valid.empty()) column.valid.assign(column.size(), 1);
  columns.push_back(std::move(column));
}

const std::vector<std::string>& standard_trc_columns() {
  static const std::vector<std::string> names{"speed_mps",     "VA10_left_mm", "VA10_right_mm", "VA35_left_mm",
                                              "VA35_right_mm", "HA10_left_mm", "HA10_right_mm"};
  return names;
}

namespace io {
namespace {

constexpr const char* kTrcTag = "# trackgeom-trc v1";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) fail(ErrorCode::parse_error, where + ": cannot parse number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) fail(ErrorCode::internal, "format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_trc(std::ostream& out, const TrcTable& table) {
  nlohmann::ordered_json meta;
  meta["spacing_m"] = table.spacing_m;
  meta["start_m"] = table.start_m;
  meta["rows"] = table.rows;
  for (const auto& [k, v] : table.metadata) meta["metadata"][k] = v;
  out << kTrcTag << "\n# " << meta.dump() << "\n";
  out << "distance_m";
  for (const auto& c : table.columns) out << ',' << c.channel_id;
  out << '\n';
  for (std::size_t i = 0; i < table.rows; ++i) {
    out << format_double(table.distance(i));
    for (const auto& c : table.columns) {
      out << ',';
      if (c.is_valid(i)) out << format_double(c.values[i]);
    }
    out << '\n';
  }
}

TrcTable read_trc(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t line_no = 0;
  nlohmann::json meta;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto brace = line.find('{');
      if (brace != std::string::npos) {
        try {
          meta = nlohmann::json::parse(line.substr(brace));
        } catch (const nlohmann::json::parse_error& e) {
          fail(ErrorCode::parse_error, origin + ":" + std::to_string(line_no) + ": bad metadata JSON");
        }
      }
      continue;
    }
    header = split_csv(line);
    break;
  }
  if (header.empty() || header[0] != "distance_m") {
    fail(ErrorCode::parse_error, origin + ": header row must start with distance_m");
  }
  std::vector<double> distance;
  std::vector<std::vector<double>> values(header.size() - 1);
  std::vector<std::vector<std::uint8_t>> valid(header.size() - 1);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    const std::string where = origin + ":" + std::to_string(line_no);
    if (cells.size() != header.size()) {
      fail(ErrorCode::parse_error, where + ": expected " + std::to_string(header.size()) + " cells, got " +
                                       std::to_string(cells.size()));
    }
    distance.push_back(parse_double(cells[0], where));
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        values[c - 1].push_back(0.0);
        valid[c - 1].push_back(0);
      } else {
        values[c - 1].push_back(parse_double(cells[c], where));
        valid[c - 1].push_back(1);
      }
    }
  }
  if (distance.empty()) fail(ErrorCode::parse_error, origin + ": no data rows");

  TrcTable t;
  t.start_m = distance.front();
  t.spacing_m = meta.value("spacing_m", distance.size() > 1 ? distance[1] - distance[0] : kDefaultSpacingM);
  t.rows = distance.size();
  for (std::size_t i = 1; i < distance.size(); ++i) {
    if (std::abs(distance[i] - distance[i - 1] - t.spacing_m) > 1e-9) {
      fail(ErrorCode::parse_error, origin + ": distance must increase by exactly " + format_double(t.spacing_m) +
                                       " m (row " + std::to_string(i + 1) + ")");
    }
  }
  if (meta.contains("metadata")) {
    for (const auto& [k, v] : meta["metadata"].items()) t.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    SpatialSeries s;
    s.values = std::move(values[c - 1]);
    s.valid = std::move(valid[c - 1]);
    s.spacing_m = t.spacing_m;
    s.start_m = t.start_m;
    s.channel_id = header[c];
    s.units = header[c].ends_with("_mm") ? "mm" : (header[c] == "speed_mps" ? "m/s" : "");
    t.add(std::move(s));
  }
  return t;
}

void write_trc(const std::filesystem::path& path, const TrcTable& table) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  write_trc(out, table);
}

TrcTable read_trc(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  return read_trc(in, path.string());
}

}  // namespace io
}  // namespace trackgeom
