#include "trackgeom/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "trackgeom/error.hpp"
#include "trackgeom/geojson.hpp"

namespace trackgeom {
namespace {

using nlohmann::json;

// Field-level validation with the source line of the offending key.
class Reader {
 public:
  Reader(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void error(const std::string& field, const std::string& what) const {
    const auto dot = field.find_last_of('.');
    std::string key = field.substr(dot == std::string::npos ? 0 : dot + 1);
    key = key.substr(0, key.find('['));
    std::size_t line = 1;
    const auto pos = text_.find("\"" + key + "\"");
    if (pos != std::string::npos) {
      for (std::size_t i = 0; i < pos; ++i) line += text_[i] == '\n' ? 1 : 0;
    }
    fail(ErrorCode::parse_error, origin_ + ":" + std::to_string(line) + ": field '" + field + "': " + what);
  }

  void allow_only(const json& obj, const std::string& field, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) error(field, "expected an object");
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
      if (!ok.contains(k)) error(field.empty() ? k : field + "." + k, "unknown key");
    }
  }

  double number(const json& obj, const std::string& key, const std::string& field, double fallback,
                bool required = false) const {
    const std::string f = field.empty() ? key : field + "." + key;
    if (!obj.contains(key)) {
      if (required) error(f, "missing required value");
      return fallback;
    }
    const auto& v = obj[key];
    if (!v.is_number()) error(f, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) error(f, "must be finite");
    return d;
  }

  double positive(const json& obj, const std::string& key, const std::string& field, double fallback,
                  bool required = false) const {
    const double d = number(obj, key, field, fallback, required);
    if (!(d > 0.0)) error(field.empty() ? key : field + "." + key, "must be positive");
    return d;
  }

 private:
  const std::string& text_;
  std::string origin_;
};

ProfileSpec read_profile(const Reader& r, const json& p) {
  r.allow_only(p, "profile", {"type", "band", "rms_mm", "components"});
  const std::string type = p.value("type", std::string{"filtered_noise"});
  if (type == "filtered_noise") {
    FilteredNoiseSpec s;
    if (p.contains("band")) {
      const auto& b = p["band"];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
        r.error("profile.band", "expected [nu_low, nu_high]");
      }
      s.nu_low = b[0].get<double>();
      s.nu_high = b[1].get<double>();
      if (!(s.nu_low > 0.0 && s.nu_low < s.nu_high && s.nu_high <= 10.0)) {
        r.error("profile.band", "need 0 < nu_low < nu_high <= 10 cycles/m");
      }
    }
    s.rms_mm = r.positive(p, "rms_mm", "profile", s.rms_mm);
    return s;
  }
  if (type == "sinusoids") {
    SinusoidSpec s;
    if (!p.contains("components") || !p["components"].is_array() || p["components"].empty()) {
      r.error("profile.components", "expected a non-empty array");
    }
    std::size_t i = 0;
    for (const auto& c : p["components"]) {
      const std::string f = "profile.components[" + std::to_string(i++) + "]";
      r.allow_only(c, f, {"nu", "amplitude_mm", "phase"});
      ProfileComponent pc;
      pc.nu = r.positive(c, "nu", f, 0.0, true);
      if (pc.nu > 10.0) r.error(f + ".nu", "must not exceed 10 cycles/m");
      pc.amplitude_mm = r.number(c, "amplitude_mm", f, 0.0, true);
      pc.phase = r.number(c, "phase", f, 0.0);
      s.components.push_back(pc);
    }
    return s;
  }
  r.error("profile.type", "expected 'filtered_noise' or 'sinusoids'");
}

SpeedPlan read_plan(const Reader& r, const json& j) {
  if (!j.is_array() || j.size() < 2) r.error("speed_plan", "expected at least two {t, v} points");
  std::vector<SpeedPoint> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "speed_plan[" + std::to_string(i) + "]";
    r.allow_only(j[i], f, {"t", "v"});
    SpeedPoint p;
    p.t_s = r.number(j[i], "t", f, 0.0, true);
    p.v_mps = r.number(j[i], "v", f, 0.0, true);
    if (p.v_mps < 0.0) r.error(f + ".v", "speed must be non-negative");
    if (i == 0 && p.t_s != 0.0) r.error(f + ".t", "plan must start at t = 0");
    if (i > 0 && p.t_s <= pts.back().t_s) r.error(f + ".t", "times must be strictly increasing");
    pts.push_back(p);
  }
  return SpeedPlan(std::move(pts));
}

SensorSpec read_sensor(const Reader& r, const json& j) {
  if (j.is_string()) {
    try {
      return catalogue_sensor(j.get<std::string>());
    } catch (const Error& e) {
      r.error("sensor", e.what());
    }
  }
  r.allow_only(j, "sensor", {"name", "location", "range_g", "noise_floor_ug_sqrtHz"});
  SensorSpec s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) r.error("sensor.name", "expected a string");
    s.name = j["name"].get<std::string>();
    try {
      s = catalogue_sensor(s.name);
    } catch (const Error&) {
      // custom sensor: explicit values below
    }
  }
  if (j.contains("location")) {
    try {
      s.location = sensor_location_from_string(j["location"].get<std::string>());
    } catch (const std::exception& e) {
      r.error("sensor.location", e.what());
    }
  }
  s.range_g = r.positive(j, "range_g", "sensor", s.range_g);
  s.noise_floor_ug_sqrtHz = r.number(j, "noise_floor_ug_sqrtHz", "sensor", s.noise_floor_ug_sqrtHz);
  if (s.noise_floor_ug_sqrtHz < 0.0) r.error("sensor.noise_floor_ug_sqrtHz", "must be non-negative");
  return s;
}

json sensor_json(const SensorSpec& s) {
  return {{"name", s.name},
          {"location", to_string(s.location)},
          {"range_g", s.range_g},
          {"noise_floor_ug_sqrtHz", s.noise_floor_ug_sqrtHz}};
}

json components_json(const std::vector<ProfileComponent>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"nu", c.nu}, {"amplitude_mm", c.amplitude_mm}, {"phase", c.phase}});
  return a;
}

std::vector<ProfileComponent> components_from(const json& a) {
  std::vector<ProfileComponent> out;
  for (const auto& c : a) out.push_back({c.at("nu").get<double>(), c.at("amplitude_mm").get<double>(), c.at("phase").get<double>()});
  return out;
}

json polyline_json(const std::vector<GeoPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({p.lat, p.lon});
  return a;
}

}  // namespace

std::vector<GeoPoint> straight_polyline(GeoPoint origin, double length_m, std::size_t vertices) {
  require(vertices >= 2, "straight_polyline: at least two vertices");
  // degrees of longitude per metre at this latitude, from the same sphere as haversine
  const double per_m = 1.0 / io::haversine_m(origin, {origin.lat, origin.lon + 1.0});
  std::vector<GeoPoint> pts;
  for (std::size_t i = 0; i < vertices; ++i) {
    const double s = length_m * static_cast<double>(i) / static_cast<double>(vertices - 1);
    pts.push_back({origin.lat, origin.lon + s * per_m});
  }
  return pts;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) line += text[i] == '\n' ? 1 : 0;
    fail(ErrorCode::parse_error, origin + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  const Reader r(text, origin);
  r.allow_only(j, "", {"length_m", "profile", "lr_correlation", "max_abs_mm", "speed_plan", "wheelbase_m",
                       "sample_rate_hz", "sensor", "impulse_events", "seed", "block_s", "lateral_disturbance",
                       "geo_polyline"});
  RunConfig c;
  c.length_m = r.positive(j, "length_m", "", c.length_m);
  if (j.contains("profile")) c.profile = read_profile(r, j["profile"]);
  c.profile_options.lr_correlation = r.number(j, "lr_correlation", "", c.profile_options.lr_correlation);
  if (std::abs(c.profile_options.lr_correlation) > 1.0) r.error("lr_correlation", "must lie in [-1, 1]");
  c.profile_options.max_abs_mm = r.positive(j, "max_abs_mm", "", c.profile_options.max_abs_mm);
  if (!j.contains("speed_plan")) r.error("speed_plan", "missing required value");
  c.sim.speed_plan = read_plan(r, j["speed_plan"]);
  if (c.sim.speed_plan.total_distance_m() < c.length_m) {
    r.error("speed_plan", "plan covers only " + std::to_string(c.sim.speed_plan.total_distance_m()) + " m of the " +
                              std::to_string(c.length_m) + " m track");
  }
  c.sim.wheelbase_m = r.positive(j, "wheelbase_m", "", c.sim.wheelbase_m);
  c.sim.sample_rate_hz = r.positive(j, "sample_rate_hz", "", c.sim.sample_rate_hz);
  if (c.sim.sample_rate_hz > 100000.0) r.error("sample_rate_hz", "must not exceed 100 kHz");
  if (j.contains("sensor")) c.sim.sensor = read_sensor(r, j["sensor"]);
  if (j.contains("impulse_events")) {
    if (!j["impulse_events"].is_array()) r.error("impulse_events", "expected an array");
    std::size_t i = 0;
    for (const auto& e : j["impulse_events"]) {
      const std::string f = "impulse_events[" + std::to_string(i++) + "]";
      r.allow_only(e, f, {"position_m", "amplitude_g", "duration_ms"});
      ImpulseEvent ev;
      ev.position_m = r.number(e, "position_m", f, 0.0, true);
      ev.amplitude_g = r.number(e, "amplitude_g", f, 0.0, true);
      ev.duration_ms = r.positive(e, "duration_ms", f, ev.duration_ms);
      c.sim.impulse_events.push_back(ev);
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) r.error("seed", "expected a non-negative integer");
    c.sim.rng_seed = j["seed"].get<std::uint64_t>();
  }
  c.block_s = r.positive(j, "block_s", "", c.block_s);
  if (j.contains("lateral_disturbance")) {
    const auto& l = j["lateral_disturbance"];
    r.allow_only(l, "lateral_disturbance", {"amplitude_mps2", "frequency_hz"});
    c.sim.lateral_disturbance.amplitude_mps2 = r.number(l, "amplitude_mps2", "lateral_disturbance", 0.0);
    c.sim.lateral_disturbance.frequency_hz =
        r.positive(l, "frequency_hz", "lateral_disturbance", c.sim.lateral_disturbance.frequency_hz);
  }
  if (j.contains("geo_polyline")) {
    const auto& g = j["geo_polyline"];
    if (!g.is_array() || g.size() < 2) r.error("geo_polyline", "expected at least two [lat, lon] points");
    for (const auto& p : g) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        r.error("geo_polyline", "expected [lat, lon] pairs");
      }
      c.geo_polyline.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

nlohmann::json to_json(const RunConfig& c) {
  json j;
  j["length_m"] = c.length_m;
  if (const auto* s = std::get_if<SinusoidSpec>(&c.profile)) {
    j["profile"] = {{"type", "sinusoids"}, {"components", components_json(s->components)}};
  } else {
    const auto& n = std::get<FilteredNoiseSpec>(c.profile);
    j["profile"] = {{"type", "filtered_noise"}, {"band", {n.nu_low, n.nu_high}}, {"rms_mm", n.rms_mm}};
  }
  j["lr_correlation"] = c.profile_options.lr_correlation;
  j["max_abs_mm"] = c.profile_options.max_abs_mm;
  json plan = json::array();
  for (const auto& p : c.sim.speed_plan.points()) plan.push_back({{"t", p.t_s}, {"v", p.v_mps}});
  j["speed_plan"] = plan;
  j["wheelbase_m"] = c.sim.wheelbase_m;
  j["sample_rate_hz"] = c.sim.sample_rate_hz;
  j["sensor"] = sensor_json(c.sim.sensor);
  json ev = json::array();
  for (const auto& e : c.sim.impulse_events) {
    ev.push_back({{"position_m", e.position_m}, {"amplitude_g", e.amplitude_g}, {"duration_ms", e.duration_ms}});
  }
  j["impulse_events"] = ev;
  j["seed"] = c.sim.rng_seed;
  j["block_s"] = c.block_s;
  j["lateral_disturbance"] = {{"amplitude_mps2", c.sim.lateral_disturbance.amplitude_mps2},
                              {"frequency_hz", c.sim.lateral_disturbance.frequency_hz}};
  if (!c.geo_polyline.empty()) j["geo_polyline"] = polyline_json(c.geo_polyline);
  return j;
}

nlohmann::json profile_to_json(const TrackProfile& p) {
  json j;
  j["format"] = "trackgeom-profile";
  j["version"] = 1;
  j["length_m"] = p.length_m;
  j["fine_spacing_m"] = p.fine_spacing_m;
  for (std::size_t c = 0; c < 4; ++c) {
    j["channels"][to_string(static_cast<ProfileChannel>(c))] = components_json(p.components[c]);
  }
  j["geo_polyline"] = polyline_json(p.geo_polyline);
  return j;
}

TrackProfile profile_from_json(const nlohmann::json& j) {
  TrackProfile p;
  try {
    if (j.value("format", std::string{}) != "trackgeom-profile") {
      fail(ErrorCode::parse_error, "not a trackgeom profile");
    }
    p.length_m = j.at("length_m").get<double>();
    p.fine_spacing_m = j.at("fine_spacing_m").get<double>();
    require(p.length_m > 0.0 && p.fine_spacing_m > 0.0, "profile: length and spacing must be positive");
    const auto count = static_cast<std::size_t>(std::floor(p.length_m / p.fine_spacing_m + 1e-9)) + 1;
    for (std::size_t c = 0; c < 4; ++c) {
      p.components[c] = components_from(j.at("channels").at(to_string(static_cast<ProfileChannel>(c))));
      p.sampled[c] = sample_derivatives(p.components[c], 0.0, p.fine_spacing_m, count)[0];
    }
    for (const auto& g : j.value("geo_polyline", json::array())) p.geo_polyline.push_back({g.at(0), g.at(1)});
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("profile: ") + e.what());
  }
  return p;
}

}  // namespace trackgeom
