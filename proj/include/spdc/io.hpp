#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spdc/phasematch.hpp"

namespace spdc::io {

// Sample count and bounds, human units.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

// Optional per-scenario figure settings.
struct FigureParams {
  std::optional<Range> scan_nm;
  std::optional<Range> taup_ps;
  std::vector<double> fig4_taup_ps;
  std::optional<double> fig6_taup_ps;
};

struct Scenario {
  ScenarioConfig config;
  FigureParams figures;
  nlohmann::json document;
  std::filesystem::path path;
};

// Parse with a line:column diagnostic on malformed JSON. Schema violations
// and unreadable files throw ConfigError.
nlohmann::json parse_json_file(const std::filesystem::path& path);

// Crystal paths are resolved relative to base_dir.
Scenario scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

// Directory of bundled data (crystals, scenarios, golden), overridable via SPDC_DATA_DIR.
std::filesystem::path data_dir();
std::filesystem::path bundled_scenario(const std::string& id);

std::uint64_t fnv1a64(const std::string& bytes);

// 16 hex digits over the canonical scenario JSON and the crystal JSON.
std::string config_hash(const Scenario& scenario);

// Fixed-precision CSV; identical rows give identical bytes.
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  void write() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::vector<std::string> header_;
  std::vector<std::string> lines_;
};

std::string format_number(double v);

// <csv>.json next to the output, carrying the config hash and any metadata.
std::filesystem::path sidecar_path(const std::filesystem::path& output);
void write_sidecar(const std::filesystem::path& output, const std::string& hash,
                   nlohmann::json meta);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

struct GoldenCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunManifest {
  std::string scenario_id;
  std::string hash;
  std::vector<std::string> operations;
  std::vector<std::string> outputs;
  nlohmann::json tolerances = nlohmann::json::object();
  std::vector<GoldenCheck> checks;

  bool all_pass() const;
  // Every listed output exists and its sidecar (or, for JSON, the file) carries the hash.
  bool outputs_consistent() const;
  nlohmann::json to_json() const;
};

}  // namespace spdc::io
