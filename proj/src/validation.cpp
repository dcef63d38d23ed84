#include "spdc/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>

#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"

namespace spdc::validation {

namespace fs = std::filesystem;
using units::nm;
using units::ps;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    v[static_cast<std::size_t>(j)] = lo * std::pow(hi / lo, static_cast<double>(j) / (n - 1));
  return v;
}

const char* mark(bool ok) { return ok ? "ok" : "FAIL"; }

// c1: Table 1 wavelengths and characteristic times.
CheckResult check_table1(const Context& ctx) {
  CheckResult r{"c1", true, "", 0.0};
  const Golden& g = ctx.golden();
  const auto t0 = Clock::now();
  std::vector<PhaseMatchSolution> sols;
  for (const auto& id : ctx.scenario_ids())
    sols.push_back(solve_central_frequencies(ctx.scenario(id).config));
  const double solve_time = seconds_since(t0);

  std::vector<std::string> parts;
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const std::string& id = ctx.scenario_ids()[k];
    const GoldenRow& row = ctx.golden_row(id);
    const PhaseMatchSolution& s = sols[k];
    const bool ls = std::abs(s.lambda_s / nm - row.lambda_s_nm) <= g.wavelength_tolerance_nm;
    const bool li = std::abs(s.lambda_i / nm - row.lambda_i_nm) <= g.wavelength_tolerance_nm;
    // A zero table entry is read as "small against tau_pi" (tau_ps), or |eta| <= 0.1.
    const double rel = g.time_relative_tolerance;
    const Comparison tps =
        compare_relative(s.tau_ps / ps, row.tau_ps_ps, rel, rel * std::abs(row.tau_pi_ps));
    const Comparison tpi =
        compare_relative(s.tau_pi / ps, row.tau_pi_ps, rel, rel * std::abs(row.tau_ps_ps));
    const Comparison eta = compare_relative(s.eta, row.eta, rel, rel);
    const bool ok = ls && li && tps.pass && tpi.pass && eta.pass;
    r.pass = r.pass && ok;
    parts.push_back(fmt::format(
        "{} {} ls={:.1f}/{:.0f} li={:.1f}/{:.0f} tps={:.4g}/{:g} tpi={:.4g}/{:g} eta={:.4g}/{:g}", id,
        mark(ok), s.lambda_s / nm, row.lambda_s_nm, s.lambda_i / nm, row.lambda_i_nm,
        s.tau_ps / ps, row.tau_ps_ps, s.tau_pi / ps, row.tau_pi_ps, s.eta, row.eta));
  }
  const bool fast = solve_time + ctx.load_seconds() < 1.0;
  r.pass = r.pass && fast;
  parts.push_back(fmt::format("runtime {:.3f}s (< 1 s) {}", solve_time + ctx.load_seconds(),
                              mark(fast)));
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c2: optimal pump duration and minimal K.
CheckResult check_closed_forms(const Context& ctx) {
  CheckResult r{"c2", true, "", 0.0};
  std::vector<std::string> parts;
  for (const auto& id : ctx.scenario_ids()) {
    const GoldenRow& row = ctx.golden_row(id);
    const double gamma = ctx.scenario(id).config.gamma;
    if (row.tau_p_min_ps > 0.0) {
      const OptimalPump from_table = optimal_pump(row.tau_ps_ps * ps, row.tau_pi_ps * ps, gamma);
      const bool ok = rel_diff(from_table.tau_p_min / ps, row.tau_p_min_ps) <= 0.01;
      r.pass = r.pass && ok;
      parts.push_back(fmt::format("{} tp_min(table)={:.4g}ps/{:g} {}", id,
                                  from_table.tau_p_min / ps, row.tau_p_min_ps, mark(ok)));
    }
    const PhaseMatchSolution& s = ctx.solution(id);
    const OptimalPump opt = optimal_pump(s.tau_ps, s.tau_pi, gamma);
    const double expected = s.eta > 0.0 ? (1.0 + s.eta) / (1.0 - s.eta) : 1.0;
    const bool branch = rel_diff(opt.k_min, expected) <= 1e-12;
    // Sampled argmin of K(tau_p) on a log grid spanning three decades.
    const std::vector<double> taus = log_grid(opt.tau_p_min / 30.0, opt.tau_p_min * 30.0, 601);
    std::vector<double> k(taus.size());
    for (std::size_t j = 0; j < taus.size(); ++j)
      k[j] = schmidt_gauss(s.tau_ps, s.tau_pi, taus[j], gamma);
    const std::size_t jmin =
        static_cast<std::size_t>(std::min_element(k.begin(), k.end()) - k.begin());
    const double step = std::log(taus[1] / taus[0]);
    const bool where = std::abs(std::log(taus[jmin] / opt.tau_p_min)) <= step;
    double neighbour = 0.0;
    if (jmin > 0) neighbour = std::max(neighbour, k[jmin - 1] - k[jmin]);
    if (jmin + 1 < k.size()) neighbour = std::max(neighbour, k[jmin + 1] - k[jmin]);
    const bool value = k[jmin] >= opt.k_min * (1.0 - 1e-12) && k[jmin] - opt.k_min <= neighbour;
    const bool ok = branch && where && value;
    r.pass = r.pass && ok;
    parts.push_back(fmt::format(
        "{} tp_min={:.4g}ps argmin={:.4g}ps K_min={:.6f} sampled={:.6f} {}", id,
        opt.tau_p_min / ps, taus[jmin] / ps, opt.k_min, k[jmin], mark(ok)));
  }
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c3: SVD and integral estimators on the figure grids and rank-1 grids.
CheckResult check_estimators(const Context& ctx) {
  CheckResult r{"c3", true, "", 0.0};
  double worst = 0.0;
  int grids = 0;
  for (const auto& id : ctx.scenario_ids()) {
    const ScenarioConfig& cfg = ctx.scenario(id).config;
    const PhaseMatchSolution& s = ctx.solution(id);
    std::vector<JsaGrid> shipped;
    for (double tp : ctx.fig4_durations(id)) {
      const GridAxes axes = default_axes(s.tau_ps, s.tau_pi, tp, cfg.gamma, ctx.grid());
      shipped.push_back(jsa_exact(cfg, s, PumpPulse{tp}, axes));
    }
    const double tp = ctx.fig6_duration(id);
    shipped.push_back(jsa_gauss(gauss_coeffs(s.tau_ps, s.tau_pi, tp, cfg.gamma), PumpPulse{tp},
                                default_axes(s.tau_ps, s.tau_pi, tp, cfg.gamma, ctx.grid())));
    for (const JsaGrid& g : shipped) {
      worst = std::max(worst, rel_diff(schmidt_svd(g).k, schmidt_integral(g)));
      ++grids;
    }
  }
  const bool shipped_ok = worst <= 1e-6;

  // Product grids f(Omega_s) g(Omega_i) with chirped, offset factors.
  double worst_rank1 = 0.0;
  const int n = ctx.grid().points;
  for (int trial = 0; trial < 3; ++trial) {
    JsaGrid g;
    g.axis_s = {5.0, n};
    g.axis_i = {2.0 + trial, n + 17 * trial};
    g.values.resize(g.axis_s.size, g.axis_i.size);
    for (int a = 0; a < g.axis_s.size; ++a) {
      const double x = g.axis_s[a];
      const std::complex<double> f =
          std::exp(-0.5 * (x - 0.3) * (x - 0.3)) * std::polar(1.0, 0.7 * x * x + trial);
      for (int b = 0; b < g.axis_i.size; ++b) {
        const double y = g.axis_i[b];
        const std::complex<double> h =
            (1.0 + 0.5 * std::cos(2.0 * y)) * std::exp(-y * y) * std::polar(1.0, -1.3 * y);
        g.values(a, b) = f * h;
      }
    }
    worst_rank1 = std::max({worst_rank1, std::abs(schmidt_svd(g).k - 1.0),
                            std::abs(schmidt_integral(g) - 1.0)});
  }
  const bool rank1_ok = worst_rank1 <= 1e-8;
  r.pass = shipped_ok && rank1_ok;
  r.detail = fmt::format("{} grids max |K_svd/K_int - 1| = {:.2e} (<= 1e-6) {}; rank-1 max |K - 1| "
                         "= {:.2e} (<= 1e-8) {}",
                         grids, worst, mark(shipped_ok), worst_rank1, mark(rank1_ok));
  return r;
}

// c4: integral estimator on Gaussian grids against the closed form.
CheckResult check_gauss_consistency(const Context& ctx) {
  CheckResult r{"c4", true, "", 0.0};
  const std::vector<double> factors{0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  GridSpec half = ctx.grid();
  half.points = std::max(16, ctx.grid().points / 2);
  std::vector<std::string> parts;
  for (const auto& id : ctx.scenario_ids()) {
    const ScenarioConfig& cfg = ctx.scenario(id).config;
    const PhaseMatchSolution& s = ctx.solution(id);
    const double tp_min = optimal_pump(s.tau_ps, s.tau_pi, cfg.gamma).tau_p_min;
    double worst = 0.0, worst_conv = 0.0;
    for (double f : factors) {
      const double tp = f * tp_min;
      const GaussCoeffs c = gauss_coeffs(s.tau_ps, s.tau_pi, tp, cfg.gamma);
      const double closed = schmidt_gauss(s.tau_ps, s.tau_pi, tp, cfg.gamma);
      const double fine = schmidt_integral(
          jsa_gauss(c, PumpPulse{tp}, default_axes(s.tau_ps, s.tau_pi, tp, cfg.gamma, ctx.grid())));
      const double coarse = schmidt_integral(
          jsa_gauss(c, PumpPulse{tp}, default_axes(s.tau_ps, s.tau_pi, tp, cfg.gamma, half)));
      worst = std::max(worst, rel_diff(fine, closed));
      worst_conv = std::max(worst_conv, rel_diff(coarse, fine));
    }
    const bool ok = worst <= 0.005 && worst_conv <= 0.001;
    r.pass = r.pass && ok;
    parts.push_back(fmt::format("{} max dev {:.2e} (<= 5e-3), {}->{} change {:.2e} (<= 1e-3) {}", id,
                                worst, half.points, ctx.grid().points, worst_conv, mark(ok)));
  }
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c5: structure of the exact K(tau_p) curves.
CheckResult check_fig3(const Context& ctx) {
  CheckResult r{"c5", true, "", 0.0};
  const auto t0 = Clock::now();
  std::vector<std::string> parts;
  for (const auto& id : ctx.scenario_ids()) {
    const io::Scenario& sc = ctx.scenario(id);
    const PhaseMatchSolution& s = ctx.solution(id);
    const std::vector<double> taus = fig3_durations(sc);
    const auto exact = sweep_pump_duration(sc.config, s, taus, SweepModel::exact, ctx.grid());
    double k_min = std::numeric_limits<double>::infinity();
    double k_sub = std::numeric_limits<double>::infinity();
    double plateau_max = 0.0, k5 = std::numeric_limits<double>::quiet_NaN();
    bool all_ok = true;
    for (const auto& p : exact) {
      if (!p.ok()) {
        all_ok = false;
        continue;
      }
      k_min = std::min(k_min, p.k);
      if (p.tau_p < 1.0 * ps) k_sub = std::min(k_sub, p.k);
      if (p.tau_p >= 2.0 * ps * (1 - 1e-12) && p.tau_p <= 10.0 * ps * (1 + 1e-12))
        plateau_max = std::max(plateau_max, p.k);
      if (std::abs(p.tau_p / ps - 5.0) < 1e-9) k5 = p.k;
    }
    const double gauss_min = optimal_pump(s.tau_ps, s.tau_pi, sc.config.gamma).k_min;
    const bool above = k_min >= gauss_min;
    bool shape = false;
    std::string what;
    if (sc.config.geometry == Geometry::counter_propagating) {
      shape = plateau_max <= 1.1 * k_min;
      what = fmt::format("plateau max/min = {:.4f} (<= 1.1)", plateau_max / k_min);
    } else {
      shape = k5 > 5.0 * k_sub;
      what = fmt::format("K(5ps)/K_sub-ps = {:.2f} (> 5)", k5 / k_sub);
    }
    const bool ok = all_ok && above && shape;
    r.pass = r.pass && ok;
    parts.push_back(fmt::format("{} {}, exact min {:.5f} >= gauss min {:.5f} {}", id, what, k_min,
                                gauss_min, mark(ok)));
  }
  const double elapsed = seconds_since(t0);
  const bool fast = elapsed < 120.0;
  r.pass = r.pass && fast;
  parts.push_back(fmt::format("runtime {:.1f}s (< 120 s) {}", elapsed, mark(fast)));
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c6: marginal bandwidths at the figure-6 operating points.
CheckResult check_spectra(const Context& ctx) {
  CheckResult r{"c6", true, "", 0.0};
  constexpr double kFwhm = 2.3548200450309493;  // 2 sqrt(2 ln 2)
  std::vector<std::string> parts;
  std::map<std::string, std::pair<double, double>> fwhm;  // exact (signal, idler)
  for (const auto& id : ctx.scenario_ids()) {
    const ScenarioConfig& cfg = ctx.scenario(id).config;
    const PhaseMatchSolution& s = ctx.solution(id);
    const double tp = ctx.fig6_duration(id);
    const JsaGrid g = jsa_exact(cfg, s, PumpPulse{tp},
                                default_axes(s.tau_ps, s.tau_pi, tp, cfg.gamma, ctx.grid()));
    const double fs_exact = marginal_spectrum(g, Subsystem::signal).fwhm;
    const double fi_exact = marginal_spectrum(g, Subsystem::idler).fwhm;
    const Bandwidths b = gauss_bandwidths(s.tau_ps, s.tau_pi, tp, cfg.gamma);
    const double ds = rel_diff(fs_exact, kFwhm * b.sigma_s);
    const double di = rel_diff(fi_exact, kFwhm * b.sigma_i);
    const bool ok = ds <= 0.10 && di <= 0.10;
    r.pass = r.pass && ok;
    fwhm[id] = {fs_exact, fi_exact};
    parts.push_back(fmt::format("{} tp={:.4g}ps FWHM_s {:.4g}/{:.4g} FWHM_i {:.4g}/{:.4g} rad/ps {}",
                                id, tp / ps, fs_exact / units::rad_per_ps,
                                kFwhm * b.sigma_s / units::rad_per_ps,
                                fi_exact / units::rad_per_ps,
                                kFwhm * b.sigma_i / units::rad_per_ps, mark(ok)));
  }
  const auto& pp = fwhm.at("ppktp");
  const double ratio = pp.second / pp.first;
  const bool ratio_ok = ratio < 1.0 / 50.0;
  r.pass = r.pass && ratio_ok;
  parts.push_back(fmt::format("ppktp idler/signal = 1/{:.1f} (< 1/50) {}", 1.0 / ratio,
                              mark(ratio_ok)));
  // Not part of the pass condition: backward idler against the co-propagating idlers.
  for (const char* other : {"kdp", "bbo"})
    parts.push_back(fmt::format("[info] ppktp idler/{} idler = 1/{:.1f}", other,
                                fwhm.at(other).second / pp.second));
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c7: orientation of the Gaussian ellipse in the limiting regimes.
CheckResult check_ellipse(const Context& ctx) {
  CheckResult r{"c7", true, "", 0.0};
  std::vector<std::string> parts;
  auto probe = [&](const std::string& id, double tp, double target, double tol_deg,
                   const std::string& label) {
    const PhaseMatchSolution& s = ctx.solution(id);
    const double theta =
        ellipse_geometry(gauss_coeffs(s.tau_ps, s.tau_pi, tp, ctx.scenario(id).config.gamma)).theta;
    const double dev = std::abs(theta - target) / units::deg;
    const bool ok = dev <= tol_deg;
    r.pass = r.pass && ok;
    parts.push_back(fmt::format("{} {}: theta={:.3f}deg target {:.1f} (+-{:g}) {}", id, label,
                                theta / units::deg, target / units::deg, tol_deg, mark(ok)));
  };
  for (const auto& id : ctx.scenario_ids())
    probe(id, 100.0 * std::abs(ctx.solution(id).tau_pi), -0.25 * units::pi, 1.0, "tp=100|tpi|");
  probe("kdp", 0.05 * std::abs(ctx.solution("kdp").tau_pi), 0.0, 1.0, "tp=0.05|tpi|");
  probe("bbo", 0.1 * std::abs(ctx.solution("bbo").tau_ps), 0.25 * units::pi, 2.0, "tp=0.1|tps|");
  r.detail = fmt::format("{}", fmt::join(parts, "; "));
  return r;
}

// c8: randomized invariants.
CheckResult check_properties(const Context&) {
  CheckResult r{"c8", true, "", 0.0};
  constexpr int kTrials = 128;
  std::mt19937_64 rng(0x5eed2026u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int scale_fail = 0, sym_fail = 0, herm_fail = 0, det_fail = 0;
  for (int t = 0; t < kTrials; ++t) {
    const double tau_ps = (4.0 * u(rng) - 2.0) * ps;
    double tau_pi = (4.0 * u(rng) - 2.0) * ps;
    if (std::abs(tau_pi - tau_ps) < 0.05 * ps) tau_pi = tau_ps + 0.5 * ps;
    const double tau_p = 0.05 * ps * std::pow(100.0, u(rng));
    const double gamma = 0.1 + 0.2 * u(rng);
    const GaussCoeffs c = gauss_coeffs(tau_ps, tau_pi, tau_p, gamma);

    const double det_expected =
        0.5 * gamma * tau_p * tau_p * (tau_ps - tau_pi) * (tau_ps - tau_pi);
    if (rel_diff(c.determinant(), det_expected) > 1e-9) ++det_fail;

    GridSpec spec{24 + t % 17, 5.0};
    GridAxes axes = default_axes(tau_ps, tau_pi, tau_p, gamma, spec);
    axes.idler.size += 7;
    JsaGrid g = jsa_gauss(c, PumpPulse{tau_p}, axes);
    for (Eigen::Index a = 0; a < g.values.rows(); ++a)
      for (Eigen::Index b = 0; b < g.values.cols(); ++b)
        g.values(a, b) *= std::polar(0.5 + u(rng), 6.283185307179586 * u(rng));

    const double k0 = schmidt_integral(g);
    JsaGrid scaled = g;
    scaled.values *= std::polar(std::pow(10.0, 6.0 * u(rng) - 3.0), u(rng));
    const double s = 0.01 + 100.0 * u(rng);
    const bool scale_ok =
        rel_diff(schmidt_integral(scaled), k0) <= 1e-10 &&
        rel_diff(schmidt_gauss(s * tau_ps, s * tau_pi, s * tau_p, gamma),
                 schmidt_gauss(tau_ps, tau_pi, tau_p, gamma)) <= 1e-12;
    if (!scale_ok) ++scale_fail;

    const CoherenceSums ns = coherence_sums(g, Subsystem::signal);
    const CoherenceSums ni = coherence_sums(g, Subsystem::idler);
    if (rel_diff(ns.n, ni.n) > 1e-10 || rel_diff(ns.b, ni.b) > 1e-10) ++sym_fail;

    for (Subsystem w : {Subsystem::signal, Subsystem::idler}) {
      const Eigen::MatrixXcd m = coherence_matrix(g, w);
      if ((m - m.adjoint()).norm() > 1e-12 * m.norm()) ++herm_fail;
    }
  }
  r.pass = scale_fail == 0 && sym_fail == 0 && herm_fail == 0 && det_fail == 0;
  r.detail = fmt::format(
      "{} trials: scale invariance {} fail, N/B signal-idler symmetry {} fail, G1 Hermitian {} "
      "fail, determinant identity {} fail",
      kTrials, scale_fail, sym_fail, herm_fail, det_fail);
  return r;
}

}  // namespace

Golden load_golden(const fs::path& path) {
  const nlohmann::json doc = io::parse_json_file(path);
  Golden g;
  try {
    g.wavelength_tolerance_nm = doc.at("wavelength_tolerance_nm").get<double>();
    g.time_relative_tolerance = doc.at("time_relative_tolerance").get<double>();
    for (const auto& row : doc.at("rows")) {
      GoldenRow r;
      r.scenario = row.at("scenario").get<std::string>();
      r.lambda_s_nm = row.at("lambda_s_nm").get<double>();
      r.lambda_i_nm = row.at("lambda_i_nm").get<double>();
      r.tau_ps_ps = row.at("tau_ps_ps").get<double>();
      r.tau_pi_ps = row.at("tau_pi_ps").get<double>();
      r.tau_p_min_ps = row.at("tau_p_min_ps").get<double>();
      r.eta = row.at("eta").get<double>();
      g.rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return g;
}

Comparison compare_relative(double value, double reference, double rel_tol,
                            double abs_tol_if_zero) {
  Comparison c{value, reference, false};
  c.pass = reference == 0.0 ? std::abs(value) <= abs_tol_if_zero
                            : std::abs(value - reference) <= rel_tol * std::abs(reference);
  return c;
}

Context::Context(fs::path data_dir, GridSpec grid)
    : data_dir_(std::move(data_dir)), grid_(grid) {
  const auto t0 = Clock::now();
  for (const auto& id : ids_) {
    io::Scenario s = io::load_scenario(data_dir_ / "scenarios" / (id + ".json"));
    solutions_.emplace(id, solve_central_frequencies(s.config));
    scenarios_.emplace(id, std::move(s));
  }
  load_seconds_ = seconds_since(t0);
  golden_ = load_golden(data_dir_ / "golden" / "table1.json");
}

const GoldenRow& Context::golden_row(const std::string& id) const {
  for (const auto& r : golden_.rows)
    if (r.scenario == id) return r;
  throw ConfigError("golden table has no row for '" + id + "'");
}

std::vector<double> Context::fig4_durations(const std::string& id) const {
  const io::Scenario& s = scenario(id);
  std::vector<double> out;
  for (double v : s.figures.fig4_taup_ps) out.push_back(v * ps);
  if (out.empty()) out.push_back(s.config.pump_duration);
  return out;
}

double Context::fig6_duration(const std::string& id) const {
  const io::Scenario& s = scenario(id);
  return s.figures.fig6_taup_ps ? *s.figures.fig6_taup_ps * ps : s.config.pump_duration;
}

std::vector<double> fig3_durations(const io::Scenario& scenario) {
  const io::Range range = scenario.figures.taup_ps.value_or(io::Range{0.01, 10.0, 25});
  std::vector<double> v = log_grid(range.lo, range.hi, range.steps);
  for (double extra : {2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0})
    if (extra >= range.lo && extra <= range.hi) v.push_back(extra);
  v.push_back(scenario.config.pump_duration / ps);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x > out.back() / ps * (1.0 + 1e-9)) out.push_back(x * ps);
  return out;
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"};
  return ids;
}

std::string check_title(const std::string& id) {
  static const std::map<std::string, std::string> titles{
      {"c1", "Table 1 reproduction"},
      {"c2", "closed-form tau_p_min and K_min"},
      {"c3", "SVD vs integral Schmidt estimators"},
      {"c4", "Gaussian grids vs closed-form K"},
      {"c5", "K(tau_p) curve structure"},
      {"c6", "marginal spectra bandwidths"},
      {"c7", "ellipse orientation limits"},
      {"c8", "randomized invariants"}};
  return titles.at(id);
}

CheckResult run_check(const std::string& id, const Context& ctx) {
  const auto t0 = Clock::now();
  CheckResult r;
  try {
    if (id == "c1") r = check_table1(ctx);
    else if (id == "c2") r = check_closed_forms(ctx);
    else if (id == "c3") r = check_estimators(ctx);
    else if (id == "c4") r = check_gauss_consistency(ctx);
    else if (id == "c5") r = check_fig3(ctx);
    else if (id == "c6") r = check_spectra(ctx);
    else if (id == "c7") r = check_ellipse(ctx);
    else if (id == "c8") r = check_properties(ctx);
    else throw ConfigError("unknown check '" + id + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r = CheckResult{id, false, std::string("error: ") + e.what(), 0.0};
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace spdc::validation
