#include "trackgeom/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include "trackgeom/error.hpp"
#include "trackgeom/geojson.hpp"
#include "trackgeom/record_io.hpp"
#include "trackgeom/report_io.hpp"
#include "trackgeom/signal.hpp"
#include "trackgeom/synth.hpp"
#include "trackgeom/trc_io.hpp"

namespace trackgeom {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Invalidates grid points whose source samples lie within `settle` samples of
// either end of the record.
void mask_record_edges(SpatialSeries& s, const DistanceAxis& axis, std::size_t settle) {
  if (settle == 0) return;
  const auto& pos = axis.positions_m;
  const std::size_t n = pos.size();
  if (s.valid.empty()) s.valid.assign(s.size(), 1);
  const bool all = 2 * settle >= n;
  const double lo = all ? 0.0 : pos[settle];
  const double hi = all ? 0.0 : pos[n - 1 - settle];
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.position(i);
    if (all || x < lo || x > hi) {
      s.valid[i] = 0;
      s.values[i] = 0.0;
    }
  }
}

std::string cutoff_tag(double hz) { return io::format_double(hz) + "Hz"; }

std::string displacement_id(AlignmentAxis axis, Rail rail, double cutoff_hz) {
  return std::string(axis == AlignmentAxis::vertical ? "z_" : "y_") + to_string(rail) + "_" + cutoff_tag(cutoff_hz) +
         "_mm";
}

std::string detect_location(const std::map<std::string, TimeSeries>& channels) {
  for (const auto& [id, ts] : channels) {
    const std::string suffix = "-front-left-vertical";
    if (id.size() > suffix.size() && id.ends_with(suffix)) return id.substr(0, id.size() - suffix.size());
  }
  fail(ErrorCode::missing_channel, "no '<location>-front-left-vertical' channel found among " +
                                       std::to_string(channels.size()) + " channels");
}

std::size_t decimation_factor(double rate, double target) {
  const double ratio = rate / target;
  const auto f = static_cast<std::size_t>(std::llround(ratio));
  require(f >= 1 && std::abs(ratio - static_cast<double>(f)) < 1e-9,
          "sample rate " + io::format_double(rate) + " Hz is not an integer multiple of " + io::format_double(target) +
              " Hz");
  return f;
}

// Speed given against time, resampled onto the processing timebase.
SpeedProfile speed_from_series(const TimeSeries& ext, double rate, double start, std::size_t n, double wheelbase) {
  require(ext.size() >= 2, "external speed needs at least two samples");
  SpeedProfile sp;
  sp.sample_rate_hz = rate;
  sp.start_time_s = start;
  sp.wheelbase_m = wheelbase;
  sp.speeds_mps.resize(n);
  sp.measured.assign(n, 1);
  const auto s = ext.samples();
  const double efs = ext.sample_rate_hz();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = ((start + static_cast<double>(i) / rate) - ext.start_time_s()) * efs;
    if (u <= 0.0) {
      sp.speeds_mps[i] = s.front();
    } else if (u >= static_cast<double>(s.size() - 1)) {
      sp.speeds_mps[i] = s.back();
    } else {
      const auto k = static_cast<std::size_t>(u);
      const double t = u - static_cast<double>(k);
      sp.speeds_mps[i] = (1.0 - t) * s[k] + t * s[k + 1];
    }
    if (!(sp.speeds_mps[i] >= 0.0)) fail(ErrorCode::invalid_argument, "external speed must be non-negative");
  }
  return sp;
}

template <class F>
void parallel_tasks(std::size_t n, F&& task) {
  std::vector<std::exception_ptr> errors(n);
  const auto ni = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < ni; ++i) {
    try {
      task(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

json options_json(const ProcessOptions& o, const std::string& location, std::size_t factor) {
  json j;
  j["va_chords_m"] = o.va_chords_m;
  j["ha_chords_m"] = o.ha_chords_m;
  j["cutoff_override_hz"] = o.cutoff_hz ? json(*o.cutoff_hz) : json(nullptr);
  j["window_m"] = o.window_m;
  j["vref_mps"] = o.vref_mps;
  j["wheelbase_m"] = o.wheelbase_m;
  j["spacing_m"] = o.spacing_m;
  j["target_rate_hz"] = o.target_rate_hz;
  j["decimation_factor"] = factor;
  j["reflection_pad_s"] = kReflectionPadS;
  j["edge_settle_cycles"] = o.edge_settle_cycles;
  j["location"] = location;
  j["speed_rail"] = to_string(o.speed_rail);
  j["speed_cutoff_hz"] = o.speed_cutoff_hz;
  j["delay"] = {{"window", o.delay.window},
                {"min_delay_s", o.delay.bounds.min_s * o.wheelbase_m / kDefaultWheelbaseM},
                {"max_delay_s", o.delay.bounds.max_s * o.wheelbase_m / kDefaultWheelbaseM},
                {"stride", o.delay.stride > 0 ? o.delay.stride : o.delay.window / 4},
                {"min_quality", o.delay.min_quality}};
  j["speed_median_s"] = o.speed.median_s;
  j["stationary"] = {{"min_speed_mps", o.stationary.min_speed_mps}, {"min_duration_s", o.stationary.min_duration_s}};
  j["window_anchor_m"] = 0.0;
  j["window_min_valid_fraction"] = kMinWindowValidFraction;
  return j;
}

}  // namespace

std::map<std::string, TimeSeries> merge_channels(const std::map<std::string, std::vector<TimeSeries>>& parts) {
  std::map<std::string, TimeSeries> out;
  for (const auto& [id, list] : parts) {
    try {
      out.emplace(id, merge_records(list));
    } catch (const Error& e) {
      fail(e.code(), "channel " + id + ": " + e.what());
    }
  }
  return out;
}

ProcessResult process(const ProcessInputs& in, const ProcessOptions& o) {
  require(o.window_m > 0.0, "window length must be positive");
  require(o.wheelbase_m > 0.0, "wheelbase must be positive");
  require(o.vref_mps > 0.0, "reference low speed must be positive");
  require(o.edge_settle_cycles >= 0.0, "edge settling length must be non-negative");
  require(!o.va_chords_m.empty() || !o.ha_chords_m.empty(), "no chord requested");
  // Validates chord/grid compatibility before any heavy work.
  for (double d : o.va_chords_m) (void)ChordSpec(d, o.spacing_m);
  for (double d : o.ha_chords_m) (void)ChordSpec(d, o.spacing_m);
  if (o.cutoff_hz) require(*o.cutoff_hz > 0.0, "cutoff override must be positive");

  const std::string loc = o.location.empty() ? detect_location(in.channels) : o.location;
  auto id_of = [&](Wheel w, Rail r, SensorAxis a) { return channel_name(sensor_location_from_string(loc), w, r, a); };
  auto need = [&](const std::string& id) -> const TimeSeries& {
    const auto it = in.channels.find(id);
    if (it == in.channels.end()) fail(ErrorCode::missing_channel, "required channel '" + id + "' is missing");
    return it->second;
  };

  auto cutoff_for = [&](double d) { return o.cutoff_hz ? *o.cutoff_hz : select_cutoff(ChordSpec(d, o.spacing_m), o.vref_mps); };

  // (channel, cutoff) pairs to integrate
  struct Job {
    std::string channel;
    AlignmentAxis axis;
    Rail rail;
    double cutoff;
    bool speed_only;
  };
  std::vector<Job> jobs;
  auto add_job = [&](const std::string& ch, AlignmentAxis axis, Rail rail, double fc, bool speed_only) {
    for (auto& j : jobs) {
      if (j.channel == ch && j.cutoff == fc) {
        j.speed_only = j.speed_only && speed_only;
        return;
      }
    }
    jobs.push_back({ch, axis, rail, fc, speed_only});
  };
  for (Rail r : {Rail::left, Rail::right}) {
    const std::string id = id_of(Wheel::front, r, SensorAxis::vertical);
    need(id);
    for (double d : o.va_chords_m) add_job(id, AlignmentAxis::vertical, r, cutoff_for(d), false);
  }
  const bool have_lateral = in.channels.contains(id_of(Wheel::front, Rail::left, SensorAxis::lateral)) &&
                            in.channels.contains(id_of(Wheel::front, Rail::right, SensorAxis::lateral));
  if (have_lateral) {
    for (Rail r : {Rail::left, Rail::right}) {
      for (double d : o.ha_chords_m) {
        add_job(id_of(Wheel::front, r, SensorAxis::lateral), AlignmentAxis::horizontal, r, cutoff_for(d), false);
      }
    }
  }
  const std::string speed_front = id_of(Wheel::front, o.speed_rail, SensorAxis::vertical);
  const std::string speed_back = id_of(Wheel::back, o.speed_rail, SensorAxis::vertical);
  if (!in.speed) {
    need(speed_back);
    add_job(speed_front, AlignmentAxis::vertical, o.speed_rail, o.speed_cutoff_hz, true);
    add_job(speed_back, AlignmentAxis::vertical, o.speed_rail, o.speed_cutoff_hz, true);
  }

  // merge is done by the caller; decimate each channel once
  std::set<std::string> used;
  for (const auto& j : jobs) used.insert(j.channel);
  const std::vector<std::string> ids(used.begin(), used.end());
  const double rate = need(ids.front()).sample_rate_hz();
  const std::size_t factor = decimation_factor(rate, o.target_rate_hz);
  const std::size_t length = need(ids.front()).size();
  const double start = need(ids.front()).start_time_s();
  for (const auto& id : ids) {
    const auto& ts = need(id);
    if (ts.sample_rate_hz() != rate || ts.size() != length || ts.start_time_s() != start) {
      fail(ErrorCode::invalid_argument, "channel " + id + " does not share the timebase of " + ids.front());
    }
  }
  std::vector<std::optional<TimeSeries>> decimated(ids.size());
  parallel_tasks(ids.size(), [&](std::size_t i) { decimated[i] = decimate(need(ids[i]), factor); });
  auto decimated_of = [&](const std::string& id) -> const TimeSeries& {
    return *decimated[static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin())];
  };

  std::vector<std::optional<TimeSeries>> disp(jobs.size());
  parallel_tasks(jobs.size(), [&](std::size_t i) { disp[i] = double_integrate(decimated_of(jobs[i].channel), jobs[i].cutoff); });
  auto disp_of = [&](const std::string& ch, double fc) -> const TimeSeries& {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].channel == ch && jobs[i].cutoff == fc) return *disp[i];
    }
    fail(ErrorCode::internal, "missing displacement for " + ch);
  };

  const TimeSeries& base = decimated_of(ids.front());
  const double frate = base.sample_rate_hz();

  ProcessResult res;
  std::string speed_source;
  if (in.speed) {
    res.speed = speed_from_series(*in.speed, frate, base.start_time_s(), base.size(), o.wheelbase_m);
    speed_source = "external";
  } else {
    DelayOptions dopt = o.delay;
    const double scale = o.wheelbase_m / kDefaultWheelbaseM;
    dopt.bounds.min_s *= scale;
    dopt.bounds.max_s *= scale;
    const DelayEstimate de = estimate_delay(disp_of(speed_front, o.speed_cutoff_hz), disp_of(speed_back, o.speed_cutoff_hz), dopt);
    res.speed = estimate_speed(de, o.wheelbase_m, o.speed);
    speed_source = "cross-correlation";
  }

  res.x0_m = o.x0_m;
  res.x0_source = "option";
  if (in.reference_speed) {
    try {
      res.x0_m = align_to_reference(res.speed, *in.reference_speed);
      res.x0_source = "reference";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::alignment_failed) throw;
      res.x0_source = std::string("option (alignment failed: ") + e.what() + ")";
    }
  }
  const DistanceAxis axis = build_distance_axis(res.speed, res.x0_m);

  const TimeSeries speed_ts(res.speed.speeds_mps, frate, res.speed.start_time_s, "speed_mps", SignalKind::speed);
  SpatialSeries speed_sp = resample_to_space(speed_ts, axis, o.spacing_m, o.stationary);
  speed_sp.channel_id = "speed_mps";

  auto settle_samples = [&](double fc) {
    return static_cast<std::size_t>(std::llround(o.edge_settle_cycles / fc * frate));
  };

  // displacement in mm on the common grid
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].speed_only) continue;
    SpatialSeries s = resample_to_space(*disp[i], axis, o.spacing_m, o.stationary);
    for (double& v : s.values) v *= 1000.0;
    mask_record_edges(s, axis, settle_samples(jobs[i].cutoff));
    s.units = "mm";
    s.channel_id = displacement_id(jobs[i].axis, jobs[i].rail, jobs[i].cutoff);
    res.displacement.push_back(std::move(s));
  }
  auto displacement_of = [&](AlignmentAxis a, Rail r, double fc) -> const SpatialSeries& {
    const std::string id = displacement_id(a, r, fc);
    for (const auto& s : res.displacement) {
      if (s.channel_id == id) return s;
    }
    fail(ErrorCode::internal, "missing spatial displacement " + id);
  };

  for (double d : o.va_chords_m) {
    for (Rail r : {Rail::left, Rail::right}) {
      res.alignments.push_back(chord_alignment(displacement_of(AlignmentAxis::vertical, r, cutoff_for(d)),
                                               ChordSpec(d, o.spacing_m), AlignmentAxis::vertical, r));
    }
  }
  if (have_lateral) {
    for (double d : o.ha_chords_m) {
      for (Rail r : {Rail::left, Rail::right}) {
        res.alignments.push_back(chord_alignment(displacement_of(AlignmentAxis::horizontal, r, cutoff_for(d)),
                                                 ChordSpec(d, o.spacing_m), AlignmentAxis::horizontal, r));
      }
    }
  }

  WindowOptions wopt;
  wopt.anchor_m = 0.0;
  for (const auto& a : res.alignments) res.windows.push_back(windowed_max(a, o.window_m, wopt));

  res.estimated.spacing_m = o.spacing_m;
  res.estimated.add(speed_sp);
  for (const auto& a : res.alignments) res.estimated.add(a.as_spatial());

  json cutoffs = json::object();
  for (double d : o.va_chords_m) cutoffs["VA" + io::format_double(d)] = cutoff_for(d);
  if (have_lateral) {
    for (double d : o.ha_chords_m) cutoffs["HA" + io::format_double(d)] = cutoff_for(d);
  }
  res.parameters = options_json(o, loc, factor);
  res.parameters["stages"] = {"merge",           "decimate",          "double_integrate", "estimate_speed",
                              "build_distance_axis", "resample_to_space", "chord_alignment",  "windowed_max"};
  res.parameters["cutoffs_hz"] = cutoffs;
  res.parameters["speed_source"] = speed_source;
  res.parameters["x0_m"] = res.x0_m;
  res.parameters["x0_source"] = res.x0_source;
  res.parameters["lateral_channels"] = have_lateral;
  res.parameters["input_rate_hz"] = rate;
  res.estimated.metadata["parameters"] = res.parameters.dump();
  res.estimated.metadata["segment"] = loc + " run";
  return res;
}

// ---------------------------------------------------------------- speed csv

TimeSeries read_speed_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot read speed file " + path.string());
  std::vector<double> t, v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.starts_with("time_s")) continue;
    const auto comma = line.find(',');
    double a = 0.0, b = 0.0;
    const auto r1 = comma == std::string::npos ? std::from_chars_result{line.data(), std::errc::invalid_argument}
                                               : std::from_chars(line.data(), line.data() + comma, a);
    const auto r2 = comma == std::string::npos ? r1 : std::from_chars(line.data() + comma + 1, line.data() + line.size(), b);
    if (r1.ec != std::errc{} || r2.ec != std::errc{}) {
      fail(ErrorCode::parse_error, path.string() + ":" + std::to_string(line_no) + ": expected time_s,speed_mps");
    }
    t.push_back(a);
    v.push_back(b);
  }
  if (t.size() < 2) fail(ErrorCode::parse_error, path.string() + ": speed file needs at least two rows");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) fail(ErrorCode::parse_error, path.string() + ": time must increase");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[0]) - static_cast<double>(i) * dt) > 1e-6 * std::max(1.0, t[i])) {
      fail(ErrorCode::parse_error, path.string() + ":" + std::to_string(i + 2) + ": time step is not uniform");
    }
  }
  return TimeSeries(std::move(v), 1.0 / dt, t[0], "speed_mps", SignalKind::speed);
}

void write_speed_csv(const fs::path& path, const TimeSeries& speed) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  out << "time_s,speed_mps\n";
  for (std::size_t i = 0; i < speed.size(); ++i) {
    out << io::format_double(speed.time_at(i)) << ',' << io::format_double(speed.samples()[i]) << '\n';
  }
}

// ---------------------------------------------------------------- commands

SimulateSummary cmd_simulate(const RunConfig& config, const fs::path& out_dir) {
  TrackProfile profile = synth_profile(config.length_m, config.profile, config.sim.rng_seed, config.profile_options);
  profile.geo_polyline = config.geo_polyline.empty() ? straight_polyline({-27.4698, 153.0251}, config.length_m)
                                                     : config.geo_polyline;
  const SimulatedRun run = simulate_run(profile, config.sim);
  const std::vector<NoisyChannel> sensed = sense(run, config.sim);

  fs::create_directories(out_dir / "records");
  const json params = to_json(config);
  const double fs_hz = config.sim.sample_rate_hz;
  const auto block = static_cast<std::size_t>(std::llround(config.block_s * fs_hz));
  require(block >= 1, "block length shorter than one sample");

  SimulateSummary summary;
  summary.channels = sensed.size();
  summary.duration_s = run.duration_s;
  for (const auto& ch : sensed) {
    const auto samples = ch.series.samples();
    for (std::size_t b = 0, k = 0; b < samples.size(); b += block, ++k) {
      const std::size_t e = std::min(samples.size(), b + block);
      const std::size_t clipped = static_cast<std::size_t>(
          std::count(ch.clipped.begin() + static_cast<std::ptrdiff_t>(b), ch.clipped.begin() + static_cast<std::ptrdiff_t>(e), 1));
      io::Record rec{TimeSeries(std::vector<double>(samples.begin() + static_cast<std::ptrdiff_t>(b),
                                                    samples.begin() + static_cast<std::ptrdiff_t>(e)),
                                fs_hz, ch.series.time_at(b), ch.series.channel_id(), SignalKind::acceleration),
                     config.sim.sensor.name,
                     {{"config", params}, {"block_index", k}, {"clipped_samples", clipped}}};
      char name[32];
      std::snprintf(name, sizeof name, "_%04zu", k);
      io::write_record(out_dir / "records" / (ch.series.channel_id() + name + io::kRecordExtension), rec);
      ++summary.record_files;
    }
  }

  TrcTable truth = ground_truth(profile, config.sim.speed_plan);
  truth.metadata["segment"] = "synthetic";
  truth.metadata["run_direction"] = "up";
  truth.metadata["parameters"] = params.dump();
  io::write_trc(out_dir / "ground_truth.csv", truth);

  {
    std::ofstream out(out_dir / "profile.json");
    if (!out) fail(ErrorCode::io_error, "cannot write profile.json");
    json pj = profile_to_json(profile);
    pj["config"] = params;
    out << pj.dump(1) << '\n';
  }
  {
    const auto n = static_cast<std::size_t>(std::floor(run.duration_s * kProcessRateHz)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = config.sim.speed_plan.speed(static_cast<double>(i) / kProcessRateHz);
    write_speed_csv(out_dir / "speed.csv", TimeSeries(std::move(v), kProcessRateHz, 0.0, "speed_mps", SignalKind::speed));
  }
  {
    json coords = json::array();
    for (const auto& p : profile.geo_polyline) coords.push_back({p.lon, p.lat});
    json fc = {{"type", "Feature"},
               {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
               {"properties", {{"length_m", config.length_m}}}};
    std::ofstream out(out_dir / "polyline.geojson");
    if (!out) fail(ErrorCode::io_error, "cannot write polyline.geojson");
    out << fc.dump() << '\n';
  }
  return summary;
}

ProcessResult cmd_process(const ProcessPaths& paths, const ProcessOptions& options) {
  ProcessInputs in;
  in.channels = merge_channels(io::read_record_dir(paths.records));
  if (in.channels.empty()) fail(ErrorCode::missing_channel, "no record files in " + paths.records.string());
  if (paths.speed_file) in.speed = read_speed_csv(*paths.speed_file);
  if (paths.reference_trc) {
    const TrcTable ref = io::read_trc(*paths.reference_trc);
    const SpatialSeries* s = ref.find("speed_mps");
    if (s == nullptr) fail(ErrorCode::missing_channel, paths.reference_trc->string() + " has no speed_mps column");
    in.reference_speed = *s;
  }
  ProcessResult res = process(in, options);
  res.parameters["records"] = paths.records.string();
  if (paths.speed_file) res.parameters["speed_file"] = paths.speed_file->string();
  if (paths.reference_trc) res.parameters["reference"] = paths.reference_trc->string();
  res.estimated.metadata["parameters"] = res.parameters.dump();

  fs::create_directories(paths.out_dir);
  io::write_trc(paths.out_dir / "estimated.csv", res.estimated);

  TrcTable dump;
  dump.spacing_m = options.spacing_m;
  for (const auto& s : res.displacement) dump.add(s);
  dump.metadata["parameters"] = res.parameters.dump();
  dump.metadata["content"] = "displacement before the chord stage";
  io::write_trc(paths.out_dir / "spatial.csv", dump);

  for (const auto& w : res.windows) io::write_windowed_stats(paths.out_dir / ("windows_" + w.label + ".csv"), w, res.parameters);
  std::ofstream out(paths.out_dir / "parameters.json");
  out << res.parameters.dump(2) << '\n';
  return res;
}

std::vector<ComparisonReport> cmd_compare(const fs::path& estimated, const fs::path& reference, double window_m,
                                          double max_shift_m, const fs::path& out_prefix,
                                          const std::vector<std::string>& columns) {
  require(window_m > 0.0, "window length must be positive");
  require(max_shift_m >= 0.0, "max shift must be non-negative");
  const TrcTable est = io::read_trc(estimated);
  const TrcTable ref = io::read_trc(reference);
  std::vector<std::string> names = columns;
  if (names.empty()) {
    for (const auto& c : est.columns) {
      if (c.channel_id != "speed_mps" && ref.find(c.channel_id) != nullptr) names.push_back(c.channel_id);
    }
    if (names.empty()) fail(ErrorCode::missing_channel, "no alignment column common to both tables");
  }
  WindowOptions wopt;
  wopt.anchor_m = 0.0;
  std::vector<ComparisonReport> reports;
  for (const auto& name : names) {
    WindowedStats we = windowed_max(est.at(name), window_m, wopt);
    WindowedStats wr = windowed_max(ref.at(name), window_m, wopt);
    we.label = wr.label = name;
    const Coregistration co = coregister(we, wr, max_shift_m);
    ComparisonReport r = correlate(co.estimated, co.reference);
    r.label = name;
    r.window_m = window_m;
    r.applied_shift_m = co.applied_shift_m;
    reports.push_back(std::move(r));
  }
  const json params = {{"estimated", estimated.string()},
                       {"reference", reference.string()},
                       {"window_m", window_m},
                       {"max_shift_m", max_shift_m},
                       {"window_anchor_m", 0.0},
                       {"columns", names}};
  if (!out_prefix.empty()) {
    if (out_prefix.has_parent_path()) fs::create_directories(out_prefix.parent_path());
    std::ofstream csv(out_prefix.string() + ".csv");
    std::ofstream js(out_prefix.string() + ".json");
    if (!csv || !js) fail(ErrorCode::io_error, "cannot write comparison report " + out_prefix.string());
    io::write_comparison_csv(csv, reports, params);
    io::write_comparison_json(js, reports, params);
  }
  return reports;
}

json cmd_export_geojson(const fs::path& windows, const fs::path& polyline, const std::vector<double>& thresholds,
                        const fs::path& out, double origin_m) {
  const WindowedStats stats = io::read_windowed_stats(windows);
  json fc = io::export_geojson(stats, io::read_polyline(polyline), thresholds, origin_m);
  fc["properties"] = {{"windows", windows.string()}, {"polyline", polyline.string()}, {"thresholds", thresholds},
                      {"origin_m", origin_m}, {"label", stats.label}};
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) fail(ErrorCode::io_error, "cannot write " + out.string());
    o << fc.dump() << '\n';
  }
  return fc;
}

}  // namespace trackgeom
