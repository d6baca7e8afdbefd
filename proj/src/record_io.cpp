#include "trackgeom/record_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "trackgeom/error.hpp"

namespace trackgeom::io {
namespace {

void append_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<char>(bits & 0xffU));
    bits >>= 8;
  }
}

double read_le(const char* p) {
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(p[b]);
  return std::bit_cast<double>(bits);
}

SignalKind kind_from_units(const std::string& units, const std::string& origin) {
  if (units == "m/s²" || units == "m/s^2") return SignalKind::acceleration;
  if (units == "m") return SignalKind::displacement;
  fail(ErrorCode::parse_error, origin + ": unsupported units '" + units + "' (expected m/s² or m)");
}

template <typename T>
T header_field(const nlohmann::json& h, const char* key, const std::string& origin) {
  if (!h.contains(key)) fail(ErrorCode::parse_error, origin + ": header field '" + key + "' is missing");
  try {
    return h.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::parse_error, origin + ": header field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string units_for(SignalKind kind) {
  switch (kind) {
    case SignalKind::acceleration: return "m/s²";
    case SignalKind::displacement: return "m";
    case SignalKind::speed: return "m/s";
  }
  return {};
}

std::string encode_record(const Record& record) {
  require(record.series.kind() != SignalKind::speed, "encode_record: speed channels are not record payloads");
  const TimeSeries& ts = record.series;
  nlohmann::ordered_json header;
  header["format"] = kRecordFormat;
  header["version"] = kRecordVersion;
  header["channel_id"] = ts.channel_id();
  header["sample_rate_hz"] = ts.sample_rate_hz();
  header["start_time_s"] = ts.start_time_s();
  header["units"] = units_for(ts.kind());
  header["sample_count"] = ts.size();
  header["sensor"] = record.sensor;
  header["parameters"] = record.parameters.is_null() ? nlohmann::json::object() : record.parameters;
  std::string out = header.dump();
  out.push_back('\n');
  out.reserve(out.size() + 8 * ts.size());
  for (double v : ts.samples()) append_le(out, v);
  return out;
}

Record decode_record(const std::string& bytes, const std::string& origin) {
  const auto eol = bytes.find('\n');
  if (eol == std::string::npos) fail(ErrorCode::parse_error, origin + ": missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(0, eol));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::parse_error, origin + ": malformed header JSON (" + e.what() + ")");
  }
  if (header_field<std::string>(h, "format", origin) != kRecordFormat) {
    fail(ErrorCode::parse_error, origin + ": not a trackgeom record");
  }
  const auto count = header_field<std::size_t>(h, "sample_count", origin);
  const std::size_t payload = bytes.size() - eol - 1;
  if (payload != 8 * count) {
    fail(ErrorCode::parse_error, origin + ": header declares " + std::to_string(count) + " samples but payload holds " +
                                     std::to_string(payload) + " bytes");
  }
  std::vector<double> samples(count);
  const char* p = bytes.data() + eol + 1;
  for (std::size_t i = 0; i < count; ++i) samples[i] = read_le(p + 8 * i);
  const auto units = header_field<std::string>(h, "units", origin);
  TimeSeries ts(std::move(samples), header_field<double>(h, "sample_rate_hz", origin),
                header_field<double>(h, "start_time_s", origin), header_field<std::string>(h, "channel_id", origin),
                kind_from_units(units, origin));
  Record r{std::move(ts), h.value("sensor", std::string{}), h.value("parameters", nlohmann::json::object())};
  return r;
}

void write_record(const std::filesystem::path& path, const Record& record) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  const std::string bytes = encode_record(record);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::io_error, "write failed for " + path.string());
}

Record read_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_record(ss.str(), path.string());
}

std::map<std::string, std::vector<TimeSeries>> read_record_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(ErrorCode::io_error, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == kRecordExtension) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, std::vector<TimeSeries>> by_channel;
  for (const auto& f : files) {
    Record r = read_record(f);
    by_channel[r.series.channel_id()].push_back(std::move(r.series));
  }
  for (auto& [id, parts] : by_channel) {
    std::stable_sort(parts.begin(), parts.end(),
                     [](const TimeSeries& a, const TimeSeries& b) { return a.start_time_s() < b.start_time_s(); });
  }
  return by_channel;
}

}  // namespace trackgeom::io
