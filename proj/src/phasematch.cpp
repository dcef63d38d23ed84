#include "spdc/phasematch.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"
#include "spdc/roots.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

constexpr int kPrescanPoints = 2000;
constexpr double kMismatchTolerance = 1e-6;  // |F| lc at the solution

double sign_of_idler(Geometry g) { return g == Geometry::counter_propagating ? -1.0 : 1.0; }

// Angular-frequency interval in which a wave of polarization p stays inside
// the Sellmeier validity range, shrunk slightly so stencils have a margin.
std::pair<double, double> omega_range(const CrystalModel& crystal, Polarization p) {
  const double lo = units::omega_from_wavelength(crystal.hi_um(p) * units::um);
  const double hi = units::omega_from_wavelength(crystal.lo_um(p) * units::um);
  const double margin = 1e-4 * (hi - lo);
  return {lo + margin, hi - margin};
}

}  // namespace

std::string to_string(Geometry g) {
  return g == Geometry::counter_propagating ? "counter_propagating" : "co_propagating";
}

Geometry parse_geometry(const std::string& s) {
  if (s == "counter_propagating" || s == "counter") return Geometry::counter_propagating;
  if (s == "co_propagating" || s == "co") return Geometry::co_propagating;
  throw ConfigError("unknown geometry '" + s + "'");
}

void ScenarioConfig::validate() const {
  if (!crystal) throw ConfigError("scenario '" + id + "': no crystal model");
  if (!(crystal_length > 0.0)) throw ConfigError("crystal_length must be positive");
  if (!(pump_wavelength > 0.0)) throw ConfigError("pump_wavelength must be positive");
  if (!(pump_duration > 0.0)) throw ConfigError("pump_duration must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(tuning_angle >= 0.0 && tuning_angle <= units::pi / 2 + 1e-12))
    throw ConfigError("tuning_angle must lie in [0, 90] degrees");
  if (poling_period && !(*poling_period > 0.0))
    throw ConfigError("poling_period must be positive");
  if (geometry == Geometry::counter_propagating) {
    if (!poling_period)
      throw ConfigError("counter-propagating geometry requires a poling period");
    const double n_p = refractive_index(*crystal, wave(WaveRole::pump, pump_wavelength),
                                        pump_wavelength);
    const double ratio = *poling_period / (pump_wavelength / n_p);
    if (!(ratio > 0.1 && ratio < 10.0))
      throw ConfigError(fmt::format(
          "counter-propagating poling period {:.4g} nm is not of order the pump wavelength "
          "in the medium ({:.4g} nm)",
          *poling_period / units::nm, pump_wavelength / n_p / units::nm));
  }
  if (signal_window && !(signal_window->first > 0.0 && signal_window->second > signal_window->first))
    throw ConfigError("signal_window must be [lo, hi] with 0 < lo < hi");
}

double ScenarioConfig::grating_wavenumber() const {
  return poling_period ? 2.0 * units::pi / *poling_period : 0.0;
}

double ScenarioConfig::pump_omega() const { return units::omega_from_wavelength(pump_wavelength); }

WaveSpec ScenarioConfig::wave(WaveRole role, double center_wavelength) const {
  WaveSpec w;
  w.role = role;
  w.center_wavelength = center_wavelength;
  w.tuning_angle = tuning_angle;
  switch (role) {
    case WaveRole::pump: w.polarization = polarizations.pump; break;
    case WaveRole::signal: w.polarization = polarizations.signal; break;
    case WaveRole::idler: w.polarization = polarizations.idler; break;
  }
  return w;
}

PhaseMatchSolution characterize(const ScenarioConfig& config, double omega_s,
                                double grating_wavenumber, double tuning_angle) {
  const CrystalModel& crystal = *config.crystal;
  PhaseMatchSolution sol;
  sol.omega_p = config.pump_omega();
  sol.omega_s = omega_s;
  sol.omega_i = sol.omega_p - omega_s;
  if (!(sol.omega_i > 0.0)) throw NoRootInBracket("signal frequency exceeds the pump frequency");
  sol.lambda_s = units::wavelength_from_omega(sol.omega_s);
  sol.lambda_i = units::wavelength_from_omega(sol.omega_i);
  sol.grating_wavenumber = grating_wavenumber;
  sol.tuning_angle = tuning_angle;

  ScenarioConfig tuned = config;
  tuned.tuning_angle = tuning_angle;
  sol.pump = tuned.wave(WaveRole::pump, config.pump_wavelength);
  sol.signal = tuned.wave(WaveRole::signal, sol.lambda_s);
  sol.idler = tuned.wave(WaveRole::idler, sol.lambda_i);

  const double half = 0.5 * config.crystal_length;
  const double kp1 = inverse_group_velocity(crystal, sol.pump, sol.omega_p);
  const double ks1 = inverse_group_velocity(crystal, sol.signal, sol.omega_s);
  const double ki1 = inverse_group_velocity(crystal, sol.idler, sol.omega_i);
  sol.tau_ps = half * (kp1 - ks1);
  sol.tau_pi = config.geometry == Geometry::counter_propagating ? half * (kp1 + ki1)
                                                                : half * (kp1 - ki1);
  sol.residual = mismatch_full(config, sol, 0.0, 0.0);

  if (config.geometry == Geometry::co_propagating && std::abs(sol.tau_ps) > std::abs(sol.tau_pi)) {
    std::swap(sol.lambda_s, sol.lambda_i);
    std::swap(sol.omega_s, sol.omega_i);
    std::swap(sol.signal, sol.idler);
    std::swap(sol.tau_ps, sol.tau_pi);
    sol.signal.role = WaveRole::signal;
    sol.idler.role = WaveRole::idler;
    sol.swapped = true;
  }
  if (sol.tau_pi != 0.0)
    sol.eta = sol.tau_ps / sol.tau_pi;
  else
    sol.eta = 0.0;  // both times vanish
  return sol;
}

double mismatch_full(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                     double omega_s_offset, double omega_i_offset) {
  const CrystalModel& crystal = *config.crystal;
  const double ks = wavenumber(crystal, solution.signal, solution.omega_s + omega_s_offset);
  const double ki = wavenumber(crystal, solution.idler, solution.omega_i + omega_i_offset);
  const double kp =
      wavenumber(crystal, solution.pump, solution.omega_p + omega_s_offset + omega_i_offset);
  const double d = ks + sign_of_idler(config.geometry) * ki - kp + solution.grating_wavenumber;
  return 0.5 * d * config.crystal_length;
}

PhaseMatchSolution solve_central_frequencies(const ScenarioConfig& config) {
  config.validate();
  const CrystalModel& crystal = *config.crystal;
  const double wp = config.pump_omega();
  const double kG = config.grating_wavenumber();
  const double sgn = sign_of_idler(config.geometry);
  const WaveSpec pump = config.wave(WaveRole::pump, config.pump_wavelength);
  const double kp = wavenumber(crystal, pump, wp);

  const auto [s_lo, s_hi] = omega_range(crystal, config.polarizations.signal);
  const auto [i_lo, i_hi] = omega_range(crystal, config.polarizations.idler);
  const double lo = std::max(s_lo, wp - i_hi);
  const double hi = std::min(s_hi, wp - i_lo);
  if (!(hi > lo))
    throw NoRootInBracket("no signal/idler pair of scenario '" + config.id +
                          "' lies inside the Sellmeier validity range");

  const WaveSpec sig = config.wave(WaveRole::signal, 0.0);
  const WaveSpec idl = config.wave(WaveRole::idler, 0.0);
  auto residual = [&](double ws) {
    return wavenumber(crystal, sig, ws) + sgn * wavenumber(crystal, idl, wp - ws) - kp + kG;
  };

  std::vector<double> roots;
  for (const auto& br : roots::sign_changes(residual, lo, hi, kPrescanPoints)) {
    if (br.lo == br.hi) {
      roots.push_back(br.lo);
      continue;
    }
    const auto r = roots::bisect_secant(residual, br.lo, br.hi,
                                        1e-3 * kMismatchTolerance / config.crystal_length,
                                        1e-15 * wp);
    roots.push_back(r.x);
  }

  if (config.signal_window) {
    const auto [w_lo, w_hi] = *config.signal_window;
    std::erase_if(roots, [&](double ws) {
      const double l = units::wavelength_from_omega(ws);
      return l < w_lo || l > w_hi;
    });
  }

  // Same-polarization co-propagating pairs appear twice, as (ws, wp - ws) and its mirror.
  if (config.geometry == Geometry::co_propagating &&
      config.polarizations.signal == config.polarizations.idler) {
    std::vector<double> unique;
    for (double r : roots) {
      const bool mirrored = std::any_of(unique.begin(), unique.end(), [&](double u) {
        return std::abs(u + r - wp) < 1e-9 * wp;
      });
      if (!mirrored) unique.push_back(std::max(r, wp - r));
    }
    roots = unique;
  }

  if (roots.empty())
    throw NoRootInBracket("scenario '" + config.id + "' is not phase-matchable in the window");
  if (roots.size() > 1) {
    std::vector<double> wavelengths;
    for (double r : roots) wavelengths.push_back(units::wavelength_from_omega(r));
    throw MultipleRoots(fmt::format("scenario '{}' has {} phase-matching roots; set "
                                    "signal_window to select one",
                                    config.id, roots.size()),
                        wavelengths);
  }

  auto sol = characterize(config, roots.front(), kG, config.tuning_angle);
  if (!(std::abs(2.0 * sol.residual) < kMismatchTolerance))
    throw NoRootInBracket(fmt::format("root refinement stalled at |F| lc = {:.3g}",
                                      std::abs(2.0 * sol.residual)));
  return sol;
}

namespace {

ScanPoint scan_point(const ScenarioConfig& config, double lambda_s) {
  ScanPoint pt;
  pt.lambda_s = lambda_s;
  const CrystalModel& crystal = *config.crystal;
  const double wp = config.pump_omega();
  const double ws = units::omega_from_wavelength(lambda_s);
  const double wi = wp - ws;
  if (!(wi > 0.0)) {
    pt.error = "signal wavelength shorter than the pump";
    return pt;
  }
  pt.scans_poling = config.geometry == Geometry::counter_propagating || config.poling_period;
  try {
    if (pt.scans_poling) {
      const double th = config.tuning_angle;
      const double kp = wavenumber(crystal, config.wave(WaveRole::pump, 0.0), wp);
      const double ks = wavenumber(crystal, config.wave(WaveRole::signal, 0.0), ws);
      const double ki = wavenumber(crystal, config.wave(WaveRole::idler, 0.0), wi);
      const double kG = config.geometry == Geometry::counter_propagating ? kp + ki - ks
                                                                          : kp - ks - ki;
      if (!(kG > 0.0)) {
        pt.error = "no positive first-order poling period phase-matches this point";
        return pt;
      }
      pt.control = 2.0 * units::pi / kG;
      pt.solution = characterize(config, ws, kG, th);
    } else {
      auto residual = [&](double theta) {
        ScenarioConfig c = config;
        c.tuning_angle = theta;
        return wavenumber(crystal, c.wave(WaveRole::signal, 0.0), ws) +
               wavenumber(crystal, c.wave(WaveRole::idler, 0.0), wi) -
               wavenumber(crystal, c.wave(WaveRole::pump, 0.0), wp);
      };
      const auto brackets = roots::sign_changes(residual, 0.0, units::pi / 2, kPrescanPoints);
      if (brackets.empty()) {
        pt.error = "no tuning angle phase-matches this point";
        return pt;
      }
      if (brackets.size() > 1) {
        pt.error = fmt::format("{} tuning angles phase-match this point", brackets.size());
        return pt;
      }
      const auto& br = brackets.front();
      const double theta =
          br.lo == br.hi ? br.lo
                         : roots::bisect_secant(residual, br.lo, br.hi,
                                                1e-3 * kMismatchTolerance / config.crystal_length,
                                                1e-15)
                               .x;
      pt.control = theta;
      pt.solution = characterize(config, ws, 0.0, theta);
    }
  } catch (const Error& e) {
    pt.solution.reset();
    pt.error = e.what();
  }
  return pt;
}

}  // namespace

std::vector<ScanPoint> scan_wavelengths(const ScenarioConfig& config, double lambda_lo,
                                        double lambda_hi, int steps) {
  if (!config.crystal) throw ConfigError("scan: no crystal model");
  if (steps < 1) throw ConfigError("scan: steps must be >= 1");
  if (!(lambda_lo > 0.0 && lambda_hi >= lambda_lo))
    throw ConfigError("scan: wavelength range must satisfy 0 < lo <= hi");
  std::vector<ScanPoint> out(static_cast<std::size_t>(steps));
  parallel_for(out.size(), [&](std::size_t j) {
    const double l =
        steps == 1 ? lambda_lo : lambda_lo + (lambda_hi - lambda_lo) * double(j) / (steps - 1);
    out[j] = scan_point(config, l);
  });
  return out;
}

}  // namespace spdc
