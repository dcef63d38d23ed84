#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spdc/io.hpp"
#include "spdc/schmidt.hpp"

namespace spdc::validation {

// Reference rows of the bundled golden table, human units.
struct GoldenRow {
  std::string scenario;
  double lambda_s_nm = 0.0;
  double lambda_i_nm = 0.0;
  double tau_ps_ps = 0.0;
  double tau_pi_ps = 0.0;
  double tau_p_min_ps = 0.0;
  double eta = 0.0;
};

struct Golden {
  double wavelength_tolerance_nm = 1.0;
  double time_relative_tolerance = 0.10;
  std::vector<GoldenRow> rows;
};

Golden load_golden(const std::filesystem::path& path);

// Comparison of one solved quantity against its table value. A zero
// reference is compared with the given absolute tolerance instead.
struct Comparison {
  double value = 0.0;
  double reference = 0.0;
  bool pass = false;
};
Comparison compare_relative(double value, double reference, double rel_tol, double abs_tol_if_zero);

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Loaded scenarios and their solutions, shared by the checks.
class Context {
 public:
  explicit Context(std::filesystem::path data_dir, GridSpec grid = {});

  const std::vector<std::string>& scenario_ids() const { return ids_; }
  const io::Scenario& scenario(const std::string& id) const { return scenarios_.at(id); }
  const PhaseMatchSolution& solution(const std::string& id) const { return solutions_.at(id); }
  const Golden& golden() const { return golden_; }
  const GoldenRow& golden_row(const std::string& id) const;
  const GridSpec& grid() const { return grid_; }
  double load_seconds() const { return load_seconds_; }
  // Pump durations of the figure-4 grids.
  std::vector<double> fig4_durations(const std::string& id) const;
  // Near-separable operating point of figure 6.
  double fig6_duration(const std::string& id) const;

 private:
  std::filesystem::path data_dir_;
  GridSpec grid_;
  std::vector<std::string> ids_{"ppktp", "kdp", "bbo"};
  std::map<std::string, io::Scenario> scenarios_;
  std::map<std::string, PhaseMatchSolution> solutions_;
  Golden golden_;
  double load_seconds_ = 0.0;
};

// Criterion ids c1 .. c8 in order.
const std::vector<std::string>& check_ids();
std::string check_title(const std::string& id);
CheckResult run_check(const std::string& id, const Context& ctx);

// Figure-3 pump durations: the log grid plus the plateau and 5 ps probes.
std::vector<double> fig3_durations(const io::Scenario& scenario);

}  // namespace spdc::validation
