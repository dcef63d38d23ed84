#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spdc/io.hpp"
#include "spdc/schmidt.hpp"

namespace spdc::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfigError = 2,
  kNoRoot = 3,
  kBadFigure = 4,
  kRuntimeError = 5,
};

struct Options {
  std::optional<double> gamma;
  int grid = 512;
  double extent_sigmas = 5.0;
  SweepModel model = SweepModel::exact;
  std::filesystem::path out = "spdc_out";
  bool json = false;
  bool log_spacing = true;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// A path to a scenario file, or the id of a bundled scenario (ppktp, kdp, bbo).
io::Scenario resolve_scenario(const std::string& arg, const Options& opts);

// "lo:hi:steps"
io::Range parse_range_arg(const std::string& text);

int cmd_solve(const std::string& scenario, const Options& opts, Io io);
int cmd_scan(const std::string& scenario, const std::optional<std::string>& range_nm,
             const Options& opts, Io io);
int cmd_sweep(const std::string& scenario, const std::string& taup_range_ps, const Options& opts,
              Io io);
int cmd_jsa(const std::string& scenario, double taup_ps, const Options& opts, Io io);
int cmd_spectrum(const std::string& scenario, std::optional<double> taup_ps, const Options& opts,
                 Io io);
int cmd_figure(int figure, const std::vector<std::string>& crystals, const Options& opts, Io io);
int cmd_validate(const Options& opts, Io io);

// Parses argv and dispatches; maps library errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spdc::cli
