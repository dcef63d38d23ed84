#include "spdc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spdc/errors.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"
#include "spdc/validation.hpp"

namespace spdc::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using units::nm;
using units::ps;
using units::rad_per_ps;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class BadFigure : public Error {
 public:
  using Error::Error;
};

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string tag(double taup_ps) { return fmt::format("{:g}ps", taup_ps); }

GridSpec grid_spec(const Options& opts) { return GridSpec{opts.grid, opts.extent_sigmas}; }

json scenario_meta(const io::Scenario& s, const Options& opts) {
  return {{"scenario", s.config.id},
          {"geometry", to_string(s.config.geometry)},
          {"crystal", s.config.crystal->name()},
          {"gamma", s.config.gamma},
          {"grid_points", opts.grid},
          {"extent_sigmas", opts.extent_sigmas}};
}

// Outputs written by one command, echoed at the end.
struct Outputs {
  std::string hash;
  std::vector<fs::path> files;

  void csv(const io::CsvWriter& w, json meta) {
    w.write();
    io::write_sidecar(w.path(), hash, std::move(meta));
    files.push_back(w.path());
  }
  void json_file(const fs::path& path, json doc) {
    doc["config_hash"] = hash;
    io::write_json(path, doc);
    files.push_back(path);
  }
  void report(std::ostream& out) const {
    for (const auto& f : files) fmt::print(out, "wrote {}\n", f.string());
  }
};

std::vector<double> range_values(const io::Range& r, bool log_spacing) {
  std::vector<double> v(static_cast<std::size_t>(r.steps));
  for (int j = 0; j < r.steps; ++j) {
    const double t = static_cast<double>(j) / (r.steps - 1);
    v[static_cast<std::size_t>(j)] =
        log_spacing ? r.lo * std::pow(r.hi / r.lo, t) : r.lo + t * (r.hi - r.lo);
  }
  return v;
}

void emit_scan(const io::Scenario& s, const io::Range& range_nm, bool with_optimum,
               const fs::path& path, Outputs& outputs) {
  const auto points =
      scan_wavelengths(s.config, range_nm.lo * nm, range_nm.hi * nm, range_nm.steps);
  const bool poling = !points.empty() && points.front().scans_poling;
  std::vector<std::string> header{"lambda_s_nm", "lambda_i_nm",
                                  poling ? "poling_period_nm" : "theta_p_deg", "tau_ps_ps",
                                  "tau_pi_ps", "eta"};
  if (with_optimum) {
    header.push_back("tau_p_min_ps");
    header.push_back("K_min");
  }
  header.push_back("swapped");
  header.push_back("status");
  io::CsvWriter w(path, header);
  int solved = 0;
  for (const auto& p : points) {
    std::vector<double> nums{p.lambda_s / nm, kNaN, kNaN, kNaN, kNaN, kNaN};
    bool swapped = false;
    if (p.solution) {
      const auto& sol = *p.solution;
      // The requested grid wavelength stays in column 1 even when labels were exchanged.
      const double partner = sol.swapped ? sol.lambda_s : sol.lambda_i;
      nums = {p.lambda_s / nm,
              partner / nm,
              poling ? p.control / nm : p.control / units::deg,
              sol.tau_ps / ps,
              sol.tau_pi / ps,
              sol.eta};
      swapped = sol.swapped;
      ++solved;
    }
    if (with_optimum) {
      if (p.solution) {
        const OptimalPump o = optimal_pump(p.solution->tau_ps, p.solution->tau_pi, s.config.gamma);
        nums.push_back(o.tau_p_min / ps);
        nums.push_back(o.k_min);
      } else {
        nums.push_back(kNaN);
        nums.push_back(kNaN);
      }
    }
    std::vector<std::string> cells;
    for (double v : nums) cells.push_back(io::format_number(v));
    cells.push_back(swapped ? "1" : "0");
    cells.push_back(p.solution ? "ok" : csv_safe(p.error));
    w.row(cells);
  }
  json meta = {{"kind", with_optimum ? "K_min and tau_p_min vs lambda_s" : "wavelength scan"},
               {"control", poling ? "poling period" : "tuning angle"},
               {"lambda_s_range_nm", {range_nm.lo, range_nm.hi}},
               {"steps", range_nm.steps},
               {"solved_points", solved},
               {"scenario", s.config.id},
               {"gamma", s.config.gamma}};
  outputs.csv(w, meta);
}

void emit_sweep(const io::Scenario& s, const PhaseMatchSolution& sol,
                const std::vector<double>& taus, const Options& opts, const fs::path& path,
                Outputs& outputs) {
  const GridSpec spec = grid_spec(opts);
  const auto gauss = sweep_pump_duration(s.config, sol, taus, SweepModel::gauss, spec);
  std::vector<SweepPoint> exact;
  if (opts.model == SweepModel::exact)
    exact = sweep_pump_duration(s.config, sol, taus, SweepModel::exact, spec);

  io::CsvWriter w(path, {"tau_p_ps", "K_gauss", "K_exact", "status"});
  for (std::size_t j = 0; j < taus.size(); ++j) {
    std::string status = gauss[j].ok() ? "ok" : csv_safe(gauss[j].error);
    double ke = kNaN;
    if (!exact.empty()) {
      ke = exact[j].k;
      if (!exact[j].ok()) status = csv_safe(exact[j].error);
    }
    w.row(std::vector<std::string>{io::format_number(taus[j] / ps), io::format_number(gauss[j].k),
                                   io::format_number(ke), status});
  }

  json meta = scenario_meta(s, opts);
  meta["kind"] = "K vs pump duration";
  meta["model"] = to_string(opts.model);
  const OptimalPump opt = optimal_pump(sol.tau_ps, sol.tau_pi, s.config.gamma);
  meta["gauss_tau_p_min_ps"] = opt.tau_p_min / ps;
  meta["gauss_K_min"] = opt.k_min;
  // tau_ps = 0: K(tau_p) falls monotonically towards 1, so no sampled minimum is reported.
  meta["monotone_to_short_pulses"] = opt.asymptotic_only;
  const auto& curve = exact.empty() ? gauss : exact;
  std::size_t best = curve.size();
  for (std::size_t j = 0; j < curve.size(); ++j)
    if (curve[j].ok() && (best == curve.size() || curve[j].k < curve[best].k)) best = j;
  if (!opt.asymptotic_only && best < curve.size()) {
    meta["sampled_minimum"] = {{"tau_p_ps", curve[best].tau_p / ps},
                               {"K", curve[best].k},
                               {"at_range_boundary", best == 0 || best + 1 == curve.size()}};
  } else {
    meta["sampled_minimum"] = nullptr;
  }
  outputs.csv(w, meta);
}

JsaGrid make_grid(const io::Scenario& s, const PhaseMatchSolution& sol, double tp,
                  const Options& opts) {
  const GridAxes axes = default_axes(sol.tau_ps, sol.tau_pi, tp, s.config.gamma, grid_spec(opts));
  if (opts.model == SweepModel::gauss)
    return jsa_gauss(gauss_coeffs(sol.tau_ps, sol.tau_pi, tp, s.config.gamma), PumpPulse{tp},
                     axes);
  return jsa_exact(s.config, sol, PumpPulse{tp}, axes);
}

json axis_meta(const FrequencyAxis& a) {
  return {{"half_extent_rad_per_ps", a.half_extent / rad_per_ps},
          {"points", a.size},
          {"step_rad_per_ps", a.step() / rad_per_ps}};
}

struct JsaSummary {
  double k_integral = 0.0;
  double k_svd = 0.0;
  double k_gauss = 0.0;
};

JsaSummary emit_jsa(const io::Scenario& s, const PhaseMatchSolution& sol, double tp,
                    const Options& opts, const fs::path& stem, Outputs& outputs) {
  const JsaGrid g = make_grid(s, sol, tp, opts);
  const Eigen::MatrixXd intensity = g.values.cwiseAbs2();
  const double peak = intensity.maxCoeff();
  if (!(peak > 0.0)) throw EmptyGrid("biphoton grid is identically zero");

  std::vector<std::string> header{"Omega_s_rad_per_ps\\Omega_i_rad_per_ps"};
  for (int b = 0; b < g.axis_i.size; ++b) header.push_back(io::format_number(g.axis_i[b] / rad_per_ps));
  fs::path csv = stem;
  csv += ".csv";
  io::CsvWriter w(csv, header);
  std::vector<double> row(static_cast<std::size_t>(g.axis_i.size) + 1);
  for (int a = 0; a < g.axis_s.size; ++a) {
    row[0] = g.axis_s[a] / rad_per_ps;
    for (int b = 0; b < g.axis_i.size; ++b)
      row[static_cast<std::size_t>(b) + 1] = intensity(a, b) / peak;
    w.row(row);
  }

  JsaSummary sum;
  sum.k_integral = schmidt_integral(g);
  const SvdSchmidt svd = schmidt_svd(g);
  sum.k_svd = svd.k;
  sum.k_gauss = schmidt_gauss(sol.tau_ps, sol.tau_pi, tp, s.config.gamma);

  json meta = scenario_meta(s, opts);
  meta["kind"] = "|psi|^2 grid";
  meta["model_tag"] = to_string(g.model);
  meta["normalization"] = "peak = 1";
  meta["layout"] = "rows: Omega_s, columns: Omega_i (rad/ps, offsets from the central frequencies)";
  meta["tau_p_ps"] = tp / ps;
  meta["axes"] = {{"signal", axis_meta(g.axis_s)}, {"idler", axis_meta(g.axis_i)}};
  meta["K_integral"] = sum.k_integral;
  meta["K_svd"] = sum.k_svd;
  meta["K_gauss"] = sum.k_gauss;
  outputs.csv(w, meta);

  fs::path modes = stem;
  modes += "_modes.csv";
  io::CsvWriter mw(modes, {"mode", "weight"});
  const std::size_t top = std::min<std::size_t>(16, svd.weights.size());
  for (std::size_t k = 0; k < top; ++k)
    mw.row(std::vector<double>{static_cast<double>(k), svd.weights[k]});
  json mmeta = scenario_meta(s, opts);
  mmeta["kind"] = "Schmidt weights, top 16";
  mmeta["model_tag"] = to_string(g.model);
  mmeta["tau_p_ps"] = tp / ps;
  mmeta["K_svd"] = svd.k;
  outputs.csv(mw, mmeta);
  return sum;
}

struct SpectraSummary {
  double fwhm_s = 0.0;
  double fwhm_i = 0.0;
  Bandwidths gauss;
  EllipseGeometry ellipse;
};

SpectraSummary emit_spectra(const io::Scenario& s, const PhaseMatchSolution& sol, double tp,
                            const Options& opts, const fs::path& stem, Outputs& outputs) {
  constexpr double kFwhm = 2.3548200450309493;
  const JsaGrid g = make_grid(s, sol, tp, opts);
  SpectraSummary sum;
  sum.gauss = gauss_bandwidths(sol.tau_ps, sol.tau_pi, tp, s.config.gamma);
  for (Subsystem which : {Subsystem::signal, Subsystem::idler}) {
    const bool sig = which == Subsystem::signal;
    const SpectrumCurve c = marginal_spectrum(g, which);
    (sig ? sum.fwhm_s : sum.fwhm_i) = c.fwhm;
    fs::path path = stem;
    path += sig ? "_signal.csv" : "_idler.csv";
    io::CsvWriter w(path, {"Omega_rad_per_ps", "S_normalized"});
    for (std::size_t j = 0; j < c.axis.size(); ++j)
      w.row(std::vector<double>{c.axis[j] / rad_per_ps, c.values[j]});
    json meta = scenario_meta(s, opts);
    meta["kind"] = sig ? "signal marginal spectrum" : "idler marginal spectrum";
    meta["model_tag"] = to_string(g.model);
    meta["tau_p_ps"] = tp / ps;
    meta["fwhm_rad_per_ps"] = c.fwhm / rad_per_ps;
    meta["gauss_fwhm_rad_per_ps"] = kFwhm * (sig ? sum.gauss.sigma_s : sum.gauss.sigma_i) / rad_per_ps;
    outputs.csv(w, meta);
  }
  sum.ellipse = ellipse_geometry(gauss_coeffs(sol.tau_ps, sol.tau_pi, tp, s.config.gamma));
  fs::path ell = stem;
  ell += "_ellipse.json";
  outputs.json_file(ell, {{"theta_rad", sum.ellipse.theta},
                          {"semi_axes_rad_per_ps",
                           {sum.ellipse.semi_axes[0] / rad_per_ps,
                            sum.ellipse.semi_axes[1] / rad_per_ps}},
                          {"tau_p_ps", tp / ps},
                          {"scenario", s.config.id}});
  return sum;
}

template <class Fn>
int guarded(Io io, Fn&& fn) {
  try {
    return fn();
  } catch (const BadFigure& e) {
    fmt::print(io.err, "error: {}\n", e.what());
    return kBadFigure;
  } catch (const ConfigError& e) {
    fmt::print(io.err, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const NoRootInBracket& e) {
    fmt::print(io.err, "no phase-matching root: {}\n", e.what());
    return kNoRoot;
  } catch (const MultipleRoots& e) {
    fmt::print(io.err, "config error: {} (set signal_window_nm to select one)\n", e.what());
    return kConfigError;
  } catch (const Error& e) {
    fmt::print(io.err, "error: {}\n", e.what());
    return kRuntimeError;
  } catch (const std::exception& e) {
    fmt::print(io.err, "error: {}\n", e.what());
    return kRuntimeError;
  }
}

}  // namespace

io::Scenario resolve_scenario(const std::string& arg, const Options& opts) {
  fs::path path = arg;
  if (!fs::exists(path)) {
    const fs::path bundled = io::bundled_scenario(arg);
    if (arg.find('/') == std::string::npos && fs::exists(bundled)) path = bundled;
    else throw ConfigError("no scenario file '" + arg + "'");
  }
  io::Scenario s = io::load_scenario(path);
  if (opts.gamma) {
    if (!(*opts.gamma > 0.0)) throw ConfigError("--gamma must be positive");
    s.config.gamma = *opts.gamma;
    s.document["gamma"] = *opts.gamma;
  }
  return s;
}

io::Range parse_range_arg(const std::string& text) {
  io::Range r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.steps) || c1 != ':' || c2 != ':' || !in.eof())
    throw ConfigError("expected lo:hi:steps, got '" + text + "'");
  if (!(r.lo > 0.0 && r.hi > r.lo) || r.steps < 2)
    throw ConfigError("range '" + text + "' needs 0 < lo < hi and steps >= 2");
  return r;
}

int cmd_solve(const std::string& scenario, const Options& opts, Io io) {
  return guarded(io, [&] {
    const io::Scenario s = resolve_scenario(scenario, opts);
    const PhaseMatchSolution sol = solve_central_frequencies(s.config);
    const OptimalPump opt = optimal_pump(sol.tau_ps, sol.tau_pi, s.config.gamma);
    if (opts.json) {
      json j = {{"scenario", s.config.id},
                {"geometry", to_string(s.config.geometry)},
                {"crystal", s.config.crystal->name()},
                {"lambda_s_nm", sol.lambda_s / nm},
                {"lambda_i_nm", sol.lambda_i / nm},
                {"tau_ps_ps", sol.tau_ps / ps},
                {"tau_pi_ps", sol.tau_pi / ps},
                {"eta", sol.eta},
                {"tau_p_min_ps", opt.tau_p_min / ps},
                {"K_min", opt.k_min},
                {"tau_p_min_asymptotic", opt.asymptotic_only},
                {"residual", sol.residual},
                {"swapped", sol.swapped},
                {"gamma", s.config.gamma},
                {"config_hash", io::config_hash(s)}};
      fmt::print(io.out, "{}\n", j.dump(2));
      return kOk;
    }
    fmt::print(io.out, "scenario   {} ({}, {})\n", s.config.id, to_string(s.config.geometry),
               s.config.crystal->name());
    fmt::print(io.out, "lambda_s   {:.3f} nm\n", sol.lambda_s / nm);
    fmt::print(io.out, "lambda_i   {:.3f} nm\n", sol.lambda_i / nm);
    fmt::print(io.out, "tau_ps     {:.5g} ps\n", sol.tau_ps / ps);
    fmt::print(io.out, "tau_pi     {:.5g} ps\n", sol.tau_pi / ps);
    fmt::print(io.out, "eta        {:.5g}\n", sol.eta);
    if (opt.asymptotic_only)
      fmt::print(io.out, "tau_p_min  0 ps (K decreases monotonically as tau_p -> 0)\n");
    else
      fmt::print(io.out, "tau_p_min  {:.5g} ps\n", opt.tau_p_min / ps);
    fmt::print(io.out, "K_min      {:.6g}\n", opt.k_min);
    if (sol.swapped) fmt::print(io.out, "note       signal/idler labels exchanged so that |tau_ps| <= |tau_pi|\n");
    return kOk;
  });
}

int cmd_scan(const std::string& scenario, const std::optional<std::string>& range_nm,
             const Options& opts, Io io) {
  return guarded(io, [&] {
    const io::Scenario s = resolve_scenario(scenario, opts);
    io::Range r;
    if (range_nm) r = parse_range_arg(*range_nm);
    else if (s.figures.scan_nm) r = *s.figures.scan_nm;
    else throw ConfigError("no --range given and the scenario has no figures.scan_nm");
    Outputs out{io::config_hash(s), {}};
    emit_scan(s, r, false, opts.out / (s.config.id + "_scan.csv"), out);
    out.report(io.out);
    return kOk;
  });
}

int cmd_sweep(const std::string& scenario, const std::string& taup_range_ps, const Options& opts,
              Io io) {
  return guarded(io, [&] {
    const io::Scenario s = resolve_scenario(scenario, opts);
    const io::Range r = parse_range_arg(taup_range_ps);
    const PhaseMatchSolution sol = solve_central_frequencies(s.config);
    std::vector<double> taus = range_values(r, opts.log_spacing);
    for (double& t : taus) t *= ps;
    Outputs out{io::config_hash(s), {}};
    emit_sweep(s, sol, taus, opts, opts.out / (s.config.id + "_sweep.csv"), out);
    out.report(io.out);
    return kOk;
  });
}

int cmd_jsa(const std::string& scenario, double taup_ps, const Options& opts, Io io) {
  return guarded(io, [&] {
    if (!(taup_ps > 0.0)) throw ConfigError("--taup must be positive");
    const io::Scenario s = resolve_scenario(scenario, opts);
    const PhaseMatchSolution sol = solve_central_frequencies(s.config);
    Outputs out{io::config_hash(s), {}};
    const JsaSummary sum = emit_jsa(s, sol, taup_ps * ps, opts,
                                    opts.out / (s.config.id + "_jsa_" + tag(taup_ps)), out);
    fmt::print(io.out, "K_integral {:.6f}\nK_svd      {:.6f}\nK_gauss    {:.6f}\n",
               sum.k_integral, sum.k_svd, sum.k_gauss);
    out.report(io.out);
    return kOk;
  });
}

int cmd_spectrum(const std::string& scenario, std::optional<double> taup_ps, const Options& opts,
                 Io io) {
  return guarded(io, [&] {
    const io::Scenario s = resolve_scenario(scenario, opts);
    const double tp = taup_ps ? *taup_ps * ps : s.config.pump_duration;
    if (!(tp > 0.0)) throw ConfigError("--taup must be positive");
    const PhaseMatchSolution sol = solve_central_frequencies(s.config);
    Outputs out{io::config_hash(s), {}};
    const SpectraSummary sum = emit_spectra(
        s, sol, tp, opts, opts.out / (s.config.id + "_spectrum_" + tag(tp / ps)), out);
    constexpr double kFwhm = 2.3548200450309493;
    fmt::print(io.out, "FWHM_s     {:.5g} rad/ps (gaussian {:.5g})\n", sum.fwhm_s / rad_per_ps,
               kFwhm * sum.gauss.sigma_s / rad_per_ps);
    fmt::print(io.out, "FWHM_i     {:.5g} rad/ps (gaussian {:.5g})\n", sum.fwhm_i / rad_per_ps,
               kFwhm * sum.gauss.sigma_i / rad_per_ps);
    fmt::print(io.out, "theta      {:.4f} rad\n", sum.ellipse.theta);
    out.report(io.out);
    return kOk;
  });
}

int cmd_figure(int figure, const std::vector<std::string>& crystals, const Options& opts, Io io) {
  return guarded(io, [&] {
    if (figure != 2 && figure != 3 && figure != 4 && figure != 6)
      throw BadFigure(fmt::format("unsupported figure {} (expected 2, 3, 4 or 6)", figure));
    const std::vector<std::string> ids =
        crystals.empty() ? std::vector<std::string>{"ppktp", "kdp", "bbo"} : crystals;
    const fs::path dir = opts.out / fmt::format("fig{}", figure);
    std::vector<fs::path> all;
    for (const auto& id : ids) {
      const io::Scenario s = resolve_scenario(id, opts);
      Outputs out{io::config_hash(s), {}};
      const std::string base = s.config.id + fmt::format("_fig{}", figure);
      if (figure == 2) {
        if (!s.figures.scan_nm) throw ConfigError(s.config.id + ": no figures.scan_nm");
        emit_scan(s, *s.figures.scan_nm, true, dir / (base + ".csv"), out);
      } else {
        const PhaseMatchSolution sol = solve_central_frequencies(s.config);
        if (figure == 3) {
          Options o = opts;
          o.model = SweepModel::exact;
          emit_sweep(s, sol, validation::fig3_durations(s), o, dir / (base + ".csv"), out);
        } else if (figure == 4) {
          Options o = opts;
          o.model = SweepModel::exact;
          std::vector<double> taus = s.figures.fig4_taup_ps;
          if (taus.empty()) taus.push_back(s.config.pump_duration / ps);
          for (double tp : taus) {
            const JsaSummary sum = emit_jsa(s, sol, tp * ps, o, dir / (base + "_" + tag(tp)), out);
            fmt::print(io.out, "{} tau_p={:g} ps K_exact={:.5f} K_gauss={:.5f}\n", s.config.id, tp,
                       sum.k_integral, sum.k_gauss);
          }
        } else {
          Options o = opts;
          o.model = SweepModel::exact;
          const double tp = s.figures.fig6_taup_ps ? *s.figures.fig6_taup_ps * ps
                                                   : s.config.pump_duration;
          emit_spectra(s, sol, tp, o, dir / base, out);
        }
      }
      out.report(io.out);
    }
    return kOk;
  });
}

int cmd_validate(const Options& opts, Io io) {
  return guarded(io, [&] {
    const validation::Context ctx(io::data_dir(), grid_spec(opts));
    io::RunManifest m;
    m.scenario_id = "table1";
    std::string joined;
    for (const auto& id : ctx.scenario_ids()) joined += io::config_hash(ctx.scenario(id));
    m.hash = fmt::format("{:016x}", io::fnv1a64(joined));
    m.operations.push_back("solve_central_frequencies");
    m.tolerances = {{"wavelength_nm", ctx.golden().wavelength_tolerance_nm},
                    {"time_relative", ctx.golden().time_relative_tolerance},
                    {"zero_reference_tau_ps_abs", "0.1 |tau_pi|"},
                    {"zero_reference_eta_abs", 0.1},
                    {"tau_p_min_relative", 0.01},
                    {"estimator_relative", 1e-6},
                    {"rank1_absolute", 1e-8},
                    {"gauss_vs_closed_form_relative", 0.005},
                    {"plateau_relative", 0.10},
                    {"fwhm_relative", 0.10},
                    {"idler_signal_ratio", 1.0 / 50.0},
                    {"ellipse_deg", {{"-pi/4", 1.0}, {"0", 1.0}, {"+pi/4", 2.0}}}};

    // Solved Table 1 quantities as a CSV.
    const fs::path table = opts.out / "validate" / "table1.csv";
    io::CsvWriter w(table, {"scenario", "lambda_s_nm", "lambda_i_nm", "tau_ps_ps", "tau_pi_ps",
                            "eta", "tau_p_min_ps", "K_min"});
    for (const auto& id : ctx.scenario_ids()) {
      const auto& sol = ctx.solution(id);
      const OptimalPump o = optimal_pump(sol.tau_ps, sol.tau_pi, ctx.scenario(id).config.gamma);
      w.row(std::vector<std::string>{
          id, io::format_number(sol.lambda_s / nm), io::format_number(sol.lambda_i / nm),
          io::format_number(sol.tau_ps / ps), io::format_number(sol.tau_pi / ps),
          io::format_number(sol.eta), io::format_number(o.tau_p_min / ps),
          io::format_number(o.k_min)});
    }
    w.write();
    json side = {{"kind", "solved Table 1 quantities"}};
    for (const auto& id : ctx.scenario_ids()) side["scenario_hashes"][id] = io::config_hash(ctx.scenario(id));
    io::write_sidecar(table, m.hash, side);
    m.outputs.push_back(table.string());

    fmt::print(io.out, "{:<5} {:<4} {:<38} {:>8}  detail\n", "check", "", "criterion", "seconds");
    for (const auto& id : validation::check_ids()) {
      const auto r = validation::run_check(id, ctx);
      m.operations.push_back(id);
      m.checks.push_back({id + " " + validation::check_title(id), r.pass, r.detail});
      fmt::print(io.out, "{:<5} {:<4} {:<38} {:>8.2f}  {}\n", id, r.pass ? "PASS" : "FAIL",
                 validation::check_title(id), r.seconds, r.detail);
      io.out.flush();
    }
    const bool consistent = m.outputs_consistent();
    m.checks.push_back({"outputs carry the config hash", consistent, ""});
    const fs::path manifest = opts.out / "validate" / "manifest.json";
    io::write_json(manifest, m.to_json());
    const int failed = static_cast<int>(
        std::count_if(m.checks.begin(), m.checks.end(), [](const auto& c) { return !c.pass; }));
    fmt::print(io.out, "{} of {} checks passed; manifest {}\n", m.checks.size() - failed,
               m.checks.size(), manifest.string());
    return m.all_pass() ? kOk : kValidationFailed;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SPDC biphoton phase matching, Schmidt number and spectra"};
  app.require_subcommand(1);
  Options opts;
  std::string model = "exact";
  std::string out_dir = opts.out.string();
  app.add_option("--gamma", opts.gamma, "Gaussian sinc-approximation constant (default 0.193)");
  app.add_option("--grid", opts.grid, "grid points per axis")->check(CLI::Range(16, 2048));
  app.add_option("--extent-sigmas", opts.extent_sigmas, "grid half-extent in Gaussian sigmas")
      ->check(CLI::PositiveNumber);
  app.add_option("--model", model, "gauss | exact");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--json", opts.json, "machine-readable output (solve)");

  std::string scenario;
  auto* solve = app.add_subcommand("solve", "central frequencies and characteristic times");
  solve->add_option("config", scenario, "scenario file or bundled id")->required();

  std::optional<std::string> range;
  auto* scan = app.add_subcommand("scan", "re-solve the grating/angle across signal wavelengths");
  scan->add_option("config", scenario)->required();
  scan->add_option("--range", range, "lambda_s lo:hi:steps in nm");

  std::string taup_range;
  bool linear = false;
  auto* sweep = app.add_subcommand("sweep", "Schmidt number vs pump duration");
  sweep->add_option("config", scenario)->required();
  sweep->add_option("--taup", taup_range, "tau_p lo:hi:steps in ps")->required();
  sweep->add_flag("--linear", linear, "linear instead of logarithmic spacing");

  double taup = 0.0;
  auto* jsa = app.add_subcommand("jsa", "|psi|^2 grid, Schmidt numbers and mode weights");
  jsa->add_option("config", scenario)->required();
  jsa->add_option("--taup", taup, "pump duration in ps")->required();

  std::optional<double> spec_taup;
  auto* spectrum = app.add_subcommand("spectrum", "marginal spectra and ellipse geometry");
  spectrum->add_option("config", scenario)->required();
  spectrum->add_option("--taup", spec_taup, "pump duration in ps (default: scenario value)");

  int figure = 0;
  std::vector<std::string> crystals;
  auto* fig = app.add_subcommand("figure", "data behind figures 2, 3, 4 and 6");
  fig->add_option("id", figure, "figure number")->required();
  fig->add_option("--crystal", crystals, "scenario ids or files (default: all bundled)");

  auto* validate = app.add_subcommand("validate", "Table 1 and acceptance checks");

  // Global options may follow the subcommand.
  for (auto* sub : {solve, scan, sweep, jsa, spectrum, fig, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;
    fmt::print(err, "usage error: {}\n", e.what());
    return kConfigError;
  }

  const Io io{out, err};
  try {
    opts.model = parse_sweep_model(model);
  } catch (const ConfigError& e) {
    fmt::print(err, "usage error: {}\n", e.what());
    return kConfigError;
  }
  opts.out = out_dir;
  opts.log_spacing = !linear;

  if (*solve) return cmd_solve(scenario, opts, io);
  if (*scan) return cmd_scan(scenario, range, opts, io);
  if (*sweep) return cmd_sweep(scenario, taup_range, opts, io);
  if (*jsa) return cmd_jsa(scenario, taup, opts, io);
  if (*spectrum) return cmd_spectrum(scenario, spec_taup, opts, io);
  if (*fig) return cmd_figure(figure, crystals, opts, io);
  return cmd_validate(opts, io);
}

}  // namespace spdc::cli
