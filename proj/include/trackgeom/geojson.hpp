#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "trackgeom/geometry.hpp"
#include "trackgeom/synth.hpp"

namespace trackgeom::io {

/// Great-circle distance on a sphere of mean Earth radius.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Polyline with cumulative arc length, for linear referencing.
class LinearReference {
 public:
  explicit LinearReference(std::vector<GeoPoint> polyline);

  double length_m() const noexcept { return cumulative_.back(); }
  GeoPoint locate(double s_m) const;
  /// Vertices of the sub-line between arc positions from_m and to_m.
  std::vector<GeoPoint> slice(double from_m, double to_m) const;

 private:
  std::vector<GeoPoint> points_;
  std::vector<double> cumulative_;
};

/// Severity bucket: the number of ascending thresholds the value reaches.
int severity_bucket(double value, const std::vector<double>& thresholds);

/// RFC 7946 FeatureCollection, one LineString per window. Track distance
/// origin_m maps to the start of the polyline.
nlohmann::json export_geojson(const WindowedStats& stats, const std::vector<GeoPoint>& polyline,
                              const std::vector<double>& thresholds, double origin_m = 0.0);

/// Polyline from a GeoJSON LineString (bare, Feature or first feature of a
/// collection) or a CSV of lat,lon rows.
std::vector<GeoPoint> read_polyline(const std::filesystem::path& path);

}  // namespace trackgeom::io
