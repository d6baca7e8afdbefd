#include "trackgeom/report_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trackgeom/error.hpp"
#include "trackgeom/trc_io.hpp"

namespace trackgeom::io {
namespace {

double parse_cell(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorCode::parse_error, where + ": cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["window_m"] = r.window_m;
  j["applied_shift_m"] = r.applied_shift_m;
  j["pearson_r"] = r.pearson_r;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["n_windows"] = r.n_windows;
  j["per_window"] = nlohmann::json::array();
  for (const auto& w : r.per_window) {
    j["per_window"].push_back(
        {{"window_start_m", w.window_start_m}, {"estimated", w.estimated}, {"reference", w.reference}, {"residual", w.residual}});
  }
  return j;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonReport>& reports,
                          const nlohmann::json& parameters) {
  out << "# trackgeom-comparison v1\n# " << parameters.dump() << "\n";
  for (const auto& r : reports) {
    out << "# " << r.label << ": pearson_r=" << format_double(r.pearson_r) << " slope=" << format_double(r.slope)
        << " intercept=" << format_double(r.intercept) << " n_windows=" << r.n_windows
        << " shift_m=" << format_double(r.applied_shift_m) << "\n";
  }
  out << "label,window_start_m,estimated,reference,residual\n";
  for (const auto& r : reports) {
    for (const auto& w : r.per_window) {
      out << r.label << ',' << format_double(w.window_start_m) << ',' << format_double(w.estimated) << ','
          << format_double(w.reference) << ',' << format_double(w.residual) << '\n';
    }
  }
}

void write_comparison_json(std::ostream& out, const std::vector<ComparisonReport>& reports,
                           const nlohmann::json& parameters) {
  nlohmann::json j;
  j["format"] = "trackgeom-comparison";
  j["version"] = 1;
  j["parameters"] = parameters;
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  out << j.dump(2) << '\n';
}

void write_windowed_stats(std::ostream& out, const WindowedStats& stats, const nlohmann::json& parameters) {
  nlohmann::ordered_json meta;
  meta["label"] = stats.label;
  meta["window_m"] = stats.window_m;
  meta["parameters"] = parameters;
  out << "# trackgeom-windows v1\n# " << meta.dump() << "\n";
  out << "window_start_m,window_end_m,value,valid_fraction,valid\n";
  for (const auto& w : stats.windows) {
    out << format_double(w.window_start_m) << ',' << format_double(w.window_end_m) << ',' << format_double(w.value)
        << ',' << format_double(w.valid_fraction) << ',' << (w.valid ? 1 : 0) << '\n';
  }
}

WindowedStats read_windowed_stats(std::istream& in, const std::string& origin) {
  WindowedStats s;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line[0] == '#') {
      const auto brace = line.find('{');
      if (brace == std::string::npos) continue;
      try {
        const auto meta = nlohmann::json::parse(line.substr(brace));
        s.label = meta.value("label", std::string{});
        s.window_m = meta.value("window_m", 0.0);
      } catch (const nlohmann::json::exception&) {
        fail(ErrorCode::parse_error, where + ": bad metadata JSON");
      }
      continue;
    }
    if (!header_seen) {
      if (!line.starts_with("window_start_m")) fail(ErrorCode::parse_error, where + ": expected window header row");
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 5) fail(ErrorCode::parse_error, where + ": expected 5 cells");
    WindowStat w;
    w.window_start_m = parse_cell(cells[0], where);
    w.window_end_m = parse_cell(cells[1], where);
    w.value = parse_cell(cells[2], where);
    w.valid_fraction = parse_cell(cells[3], where);
    w.valid = cells[4] == "1";
    s.windows.push_back(w);
  }
  if (!header_seen) fail(ErrorCode::parse_error, origin + ": no window table");
  if (s.window_m <= 0.0 && !s.windows.empty()) s.window_m = s.windows[0].window_end_m - s.windows[0].window_start_m;
  return s;
}

void write_windowed_stats(const std::filesystem::path& path, const WindowedStats& stats,
                          const nlohmann::json& parameters) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  write_windowed_stats(out, stats, parameters);
}

WindowedStats read_windowed_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path.string());
  return read_windowed_stats(in, path.string());
}

void write_psd_csv(std::ostream& out, const std::vector<std::string>& names, const std::vector<SpatialPSD>& spectra,
                   const nlohmann::json& parameters) {
  require(names.size() == spectra.size() && !spectra.empty(), "write_psd_csv: names and spectra must pair up");
  out << "# trackgeom-psd v1\n# " << parameters.dump() << "\n";
  out << "nu_cycles_per_m";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  const auto& nu = spectra.front().nu_axis;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    out << format_double(nu[k]);
    for (const auto& s : spectra) out << ',' << (k < s.density.size() ? format_double(s.density[k]) : std::string{});
    out << '\n';
  }
}

}  // namespace trackgeom::io
