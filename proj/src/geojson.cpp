#include "trackgeom/geojson.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "trackgeom/error.hpp"

namespace trackgeom::io {
namespace {

constexpr double kEarthRadiusM = 6371008.8;

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

GeoPoint lerp(const GeoPoint& a, const GeoPoint& b, double t) {
  return {a.lat + t * (b.lat - a.lat), a.lon + t * (b.lon - a.lon)};
}

std::vector<GeoPoint> from_coordinates(const nlohmann::json& coords, const std::string& origin) {
  std::vector<GeoPoint> out;
  if (!coords.is_array()) fail(ErrorCode::parse_error, origin + ": coordinates must be an array");
  for (const auto& c : coords) {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
      fail(ErrorCode::parse_error, origin + ": each coordinate must be [lon, lat]");
    }
    out.push_back({c[1].get<double>(), c[0].get<double>()});
  }
  return out;
}

std::vector<GeoPoint> from_geometry(const nlohmann::json& g, const std::string& origin) {
  const auto type = g.value("type", std::string{});
  if (type == "LineString") return from_coordinates(g.at("coordinates"), origin);
  if (type == "Feature") return from_geometry(g.at("geometry"), origin);
  if (type == "FeatureCollection") {
    for (const auto& f : g.at("features")) {
      if (f.contains("geometry") && f["geometry"].value("type", std::string{}) == "LineString") {
        return from_geometry(f["geometry"], origin);
      }
    }
  }
  fail(ErrorCode::parse_error, origin + ": no LineString found");
}

}  // namespace

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = rad(b.lat - a.lat);
  const double dlon = rad(b.lon - a.lon);
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(rad(a.lat)) * std::cos(rad(b.lat)) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

LinearReference::LinearReference(std::vector<GeoPoint> polyline) : points_(std::move(polyline)) {
  require(points_.size() >= 2, "polyline needs at least two points");
  cumulative_.assign(points_.size(), 0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + haversine_m(points_[i - 1], points_[i]);
  }
}

GeoPoint LinearReference::locate(double s) const {
  s = std::clamp(s, 0.0, length_m());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.end() ? points_.size() - 1 : static_cast<std::size_t>(it - cumulative_.begin());
  if (i == 0) return points_.front();
  const double seg = cumulative_[i] - cumulative_[i - 1];
  const double t = seg > 0 ? (s - cumulative_[i - 1]) / seg : 0.0;
  return lerp(points_[i - 1], points_[i], std::min(t, 1.0));
}

std::vector<GeoPoint> LinearReference::slice(double from, double to) const {
  from = std::clamp(from, 0.0, length_m());
  to = std::clamp(to, from, length_m());
  std::vector<GeoPoint> out{locate(from)};
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (cumulative_[i] > from + 1e-6 && cumulative_[i] < to - 1e-6) out.push_back(points_[i]);
  }
  out.push_back(locate(to));
  return out;
}

int severity_bucket(double value, const std::vector<double>& thresholds) {
  int n = 0;
  for (double t : thresholds) n += value >= t ? 1 : 0;
  return n;
}

nlohmann::json export_geojson(const WindowedStats& stats, const std::vector<GeoPoint>& polyline,
                              const std::vector<double>& thresholds, double origin_m) {
  require(std::is_sorted(thresholds.begin(), thresholds.end()), "severity thresholds must be ascending");
  const LinearReference ref(polyline);
  if (!stats.windows.empty()) {
    const double span = stats.windows.back().window_end_m - origin_m;
    // tolerate a partial last window overhanging by less than one window
    if (span - stats.window_m > ref.length_m() + 1e-6) {
      fail(ErrorCode::invalid_argument, "polyline (" + std::to_string(ref.length_m()) +
                                            " m) is shorter than the track span (" + std::to_string(span) + " m)");
    }
  }
  nlohmann::json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = nlohmann::json::array();
  for (const auto& w : stats.windows) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& p : ref.slice(w.window_start_m - origin_m, w.window_end_m - origin_m)) {
      coords.push_back({p.lon, p.lat});
    }
    nlohmann::json props;
    props["label"] = stats.label;
    props["window_start_m"] = w.window_start_m;
    props["window_end_m"] = w.window_end_m;
    props["valid_fraction"] = w.valid_fraction;
    props["valid"] = w.valid;
    if (w.valid) {
      props["value_mm"] = w.value;
      props["severity"] = severity_bucket(std::abs(w.value), thresholds);
    } else {
      props["value_mm"] = nullptr;
      props["severity"] = nullptr;
    }
    fc["features"].push_back(
        {{"type", "Feature"}, {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}, {"properties", props}});
  }
  return fc;
}

std::vector<GeoPoint> read_polyline(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::parse_error, path.string() + ": " + e.what());
    }
    auto pts = from_geometry(j, path.string());
    require(pts.size() >= 2, path.string() + ": polyline needs at least two points");
    return pts;
  }
  std::vector<GeoPoint> pts;
  std::istringstream lines(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    double lat = 0.0, lon = 0.0;
    char comma = 0;
    std::istringstream row(line);
    if (!(row >> lat >> comma >> lon) || comma != ',') {
      if (pts.empty() && line_no == 1) continue;  // header row
      fail(ErrorCode::parse_error, path.string() + ":" + std::to_string(line_no) + ": expected lat,lon");
    }
    pts.push_back({lat, lon});
  }
  require(pts.size() >= 2, path.string() + ": polyline needs at least two points");
  return pts;
}

}  // namespace trackgeom::io
