#include "spdc/io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

#ifndef SPDC_DATA_DIR
#define SPDC_DATA_DIR "data"
#endif

namespace spdc::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// nlohmann reports a byte offset; callers want line:column.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(const std::string& key, const std::string& what) {
  throw ConfigError(fmt::format("scenario field '{}': {}", key, what));
}

double number(const json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) schema_error(key, "missing");
  if (!it->is_number()) schema_error(key, "expected a number");
  return it->get<double>();
}

double positive(const json& doc, const std::string& key) {
  const double v = number(doc, key);
  if (!(v > 0.0)) schema_error(key, "must be positive");
  return v;
}

std::string string_field(const json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) schema_error(key, "missing");
  if (!it->is_string()) schema_error(key, "expected a string");
  return it->get<std::string>();
}

Range parse_range(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number_integer())
    schema_error(key, "expected [lo, hi, steps]");
  Range r{v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
  if (!(r.lo > 0.0 && r.hi > r.lo) || r.steps < 2)
    schema_error(key, "need 0 < lo < hi and steps >= 2");
  return r;
}

FigureParams parse_figures(const json& f) {
  static const std::set<std::string> known{"scan_nm", "taup_ps", "fig4_taup_ps", "fig6_taup_ps"};
  if (!f.is_object()) schema_error("figures", "expected an object");
  for (const auto& [k, _] : f.items())
    if (!known.count(k)) schema_error("figures." + k, "unknown field");
  FigureParams p;
  if (f.contains("scan_nm")) p.scan_nm = parse_range(f["scan_nm"], "figures.scan_nm");
  if (f.contains("taup_ps")) p.taup_ps = parse_range(f["taup_ps"], "figures.taup_ps");
  if (f.contains("fig4_taup_ps")) {
    const json& l = f["fig4_taup_ps"];
    if (!l.is_array() || l.empty()) schema_error("figures.fig4_taup_ps", "expected a list");
    for (const auto& v : l) {
      if (!v.is_number() || !(v.get<double>() > 0.0))
        schema_error("figures.fig4_taup_ps", "entries must be positive numbers");
      p.fig4_taup_ps.push_back(v.get<double>());
    }
  }
  if (f.contains("fig6_taup_ps")) p.fig6_taup_ps = positive(f, "fig6_taup_ps");
  return p;
}

}  // namespace

json parse_json_file(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(fmt::format("{}:{}:{}: malformed JSON ({})", path.string(), line, col,
                                  e.what()));
  }
}

Scenario scenario_from_json(const json& doc, const fs::path& base_dir) {
  static const std::set<std::string> known{
      "id",       "geometry",         "crystal",         "crystal_length_mm",
      "pump_wavelength_nm", "poling_period_nm", "tuning_angle_deg", "polarizations",
      "pump_duration_ps",   "gamma",            "signal_window_nm", "figures"};
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  for (const auto& [k, _] : doc.items())
    if (!known.count(k)) schema_error(k, "unknown field");

  Scenario s;
  s.document = doc;
  ScenarioConfig& c = s.config;
  c.id = string_field(doc, "id");
  if (c.id.empty()) schema_error("id", "must not be empty");
  try {
    c.geometry = parse_geometry(string_field(doc, "geometry"));
  } catch (const Error& e) {
    schema_error("geometry", e.what());
  }

  fs::path crystal_path = string_field(doc, "crystal");
  if (crystal_path.is_relative()) crystal_path = base_dir / crystal_path;
  try {
    c.crystal = std::make_shared<const CrystalModel>(
        CrystalModel::from_json(parse_json_file(crystal_path)));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("crystal file {}: {}", crystal_path.string(), e.what()));
  }

  c.crystal_length = positive(doc, "crystal_length_mm") * units::mm;
  c.pump_wavelength = positive(doc, "pump_wavelength_nm") * units::nm;
  if (doc.contains("poling_period_nm"))
    c.poling_period = positive(doc, "poling_period_nm") * units::nm;
  if (doc.contains("tuning_angle_deg")) {
    const double deg = number(doc, "tuning_angle_deg");
    if (!(deg >= 0.0 && deg <= 90.0)) schema_error("tuning_angle_deg", "must lie in [0, 90]");
    c.tuning_angle = deg * units::deg;
  } else {
    c.tuning_angle = 90.0 * units::deg;
  }

  const auto pol = doc.find("polarizations");
  if (pol == doc.end() || !pol->is_object()) schema_error("polarizations", "expected an object");
  for (const auto& [k, _] : pol->items())
    if (k != "pump" && k != "signal" && k != "idler")
      schema_error("polarizations." + k, "unknown field");
  auto polarization = [&](const std::string& role) {
    try {
      return parse_polarization(string_field(*pol, role));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      schema_error("polarizations." + role, e.what());
    }
  };
  c.polarizations = {polarization("pump"), polarization("signal"), polarization("idler")};

  c.pump_duration = positive(doc, "pump_duration_ps") * units::ps;
  if (doc.contains("gamma")) c.gamma = positive(doc, "gamma");
  if (doc.contains("signal_window_nm")) {
    const json& w = doc["signal_window_nm"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      schema_error("signal_window_nm", "expected [lo, hi]");
    c.signal_window = std::make_pair(w[0].get<double>() * units::nm, w[1].get<double>() * units::nm);
  }
  if (doc.contains("figures")) s.figures = parse_figures(doc["figures"]);

  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Scenario load_scenario(const fs::path& path) {
  Scenario s = scenario_from_json(parse_json_file(path), path.parent_path());
  s.path = path;
  return s;
}

fs::path data_dir() {
  if (const char* env = std::getenv("SPDC_DATA_DIR"); env && *env) return env;
  return SPDC_DATA_DIR;
}

fs::path bundled_scenario(const std::string& id) {
  return data_dir() / "scenarios" / (id + ".json");
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const Scenario& scenario) {
  std::string bytes = scenario.document.dump();
  if (scenario.config.crystal) bytes += scenario.config.crystal->document().dump();
  return fmt::format("{:016x}", fnv1a64(bytes));
}

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

CsvWriter::CsvWriter(fs::path path, std::vector<std::string> header)
    : path_(std::move(path)), header_(std::move(header)) {}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw Error(fmt::format("{}: row has {} cells, header has {}", path_.string(), cells.size(),
                            header_.size()));
  lines_.push_back(fmt::format("{}", fmt::join(cells, ",")));
}

void CsvWriter::write() const {
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw Error("cannot write " + path_.string());
  out << fmt::format("{}", fmt::join(header_, ",")) << '\n';
  for (const auto& l : lines_) out << l << '\n';
}

fs::path sidecar_path(const fs::path& output) {
  fs::path p = output;
  p += ".json";
  return p;
}

void write_json(const fs::path& path, const json& doc) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void write_sidecar(const fs::path& output, const std::string& hash, json meta) {
  if (!meta.is_object()) meta = json::object();
  meta["config_hash"] = hash;
  meta["file"] = output.filename().string();
  write_json(sidecar_path(output), meta);
}

bool RunManifest::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool RunManifest::outputs_consistent() const {
  for (const auto& o : outputs) {
    if (!fs::exists(o)) return false;
    // JSON outputs carry the hash themselves.
    const fs::path side = fs::path(o).extension() == ".json" ? fs::path(o) : sidecar_path(o);
    if (!fs::exists(side)) return false;
    try {
      const json meta = parse_json_file(side);
      if (meta.value("config_hash", std::string{}).find(hash) == std::string::npos) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

json RunManifest::to_json() const {
  json j;
  j["scenario_id"] = scenario_id;
  j["config_hash"] = hash;
  j["operations"] = operations;
  j["outputs"] = outputs;
  j["tolerances"] = tolerances;
  j["checks"] = json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["all_pass"] = all_pass();
  return j;
}

}  // namespace spdc::io
