#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

enum class Geometry { counter_propagating, co_propagating };

std::string to_string(Geometry g);
Geometry parse_geometry(const std::string& s);

struct PolarizationTriple {
  Polarization pump = Polarization::extraordinary;
  Polarization signal = Polarization::extraordinary;
  Polarization idler = Polarization::extraordinary;
};

// In the counter-propagating geometry the idler travels against the pump.
struct ScenarioConfig {
  std::string id;
  Geometry geometry = Geometry::co_propagating;
  std::shared_ptr<const CrystalModel> crystal;
  double crystal_length = 0.0;           // m
  double pump_wavelength = 0.0;          // m
  std::optional<double> poling_period;   // m; empty means bulk, k_G = 0
  double tuning_angle = 0.0;             // rad
  PolarizationTriple polarizations;
  double pump_duration = 0.0;            // s
  double gamma = 0.193;
  std::optional<std::pair<double, double>> signal_window;  // m, selects among multiple roots

  // Throws ConfigError on violated invariants.
  void validate() const;
  double grating_wavenumber() const;
  double pump_omega() const;
  WaveSpec wave(WaveRole role, double center_wavelength) const;
};

struct PhaseMatchSolution {
  double lambda_s = 0.0;  // m
  double lambda_i = 0.0;
  double omega_p = 0.0;   // rad/s
  double omega_s = 0.0;
  double omega_i = 0.0;
  double tau_ps = 0.0;    // s, (lc/2)(k'_p - k'_s)
  double tau_pi = 0.0;    // s, (lc/2)(k'_p + k'_i) counter, (lc/2)(k'_p - k'_i) co
  double eta = 0.0;
  double residual = 0.0;  // D lc / 2 at the central frequencies
  WaveSpec pump;
  WaveSpec signal;
  WaveSpec idler;
  double grating_wavenumber = 0.0;  // 1/m
  double tuning_angle = 0.0;        // rad
  // Labels exchanged relative to the config so that |tau_ps| <= |tau_pi|.
  bool swapped = false;
};

// Fills times and eta for a phase-matched (omega_s, omega_p - omega_s) pair,
// applying the canonical ordering in the co-propagating geometry.
PhaseMatchSolution characterize(const ScenarioConfig& config, double omega_s,
                                double grating_wavenumber, double tuning_angle);

// Finds omega_s with |F(omega_s)| lc < 1e-6, F = k_s -/+ k_i - k_p + k_G.
// Throws NoRootInBracket and MultipleRoots.
PhaseMatchSolution solve_central_frequencies(const ScenarioConfig& config);

// D lc / 2 at the given offsets from the solution's central frequencies, full dispersion.
double mismatch_full(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                     double omega_s_offset, double omega_i_offset);

struct ScanPoint {
  double lambda_s = 0.0;  // requested grid wavelength, m
  std::optional<PhaseMatchSolution> solution;
  std::string error;
  // Poling period (counter, or co with a grating) or tuning angle found for this point.
  double control = 0.0;
  bool scans_poling = false;
};

// Re-solves the poling period (counter geometry, or co with a grating) or the
// tuning angle (bulk co geometry) for each signal wavelength in
// [lambda_lo, lambda_hi]. Per-point failures are recorded; output keeps grid order.
std::vector<ScanPoint> scan_wavelengths(const ScenarioConfig& config, double lambda_lo,
                                        double lambda_hi, int steps);

}  // namespace spdc
