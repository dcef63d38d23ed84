#pragma once

#include <limits>
#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

// Gaussian-model Schmidt number,
// K = [1 + eta^2 + (tau_p/tau_pi)^2 / 2gamma + 2gamma (tau_ps/tau_p)^2]^(1/2) / (1 - eta).
// Throws DegenerateGroupVelocities when tau_ps == tau_pi.
double schmidt_gauss(double tau_ps, double tau_pi, double tau_p, double gamma);

// Same quantity from the quadratic form, sqrt(c11 c22 / (c11 c22 - c12^2)).
double schmidt_gauss(const GaussCoeffs& coeffs);

struct OptimalPump {
  double tau_p_min = 0.0;  // s
  double k_min = 1.0;
  // tau_ps == 0: K decreases monotonically towards 1 as tau_p -> 0.
  bool asymptotic_only = false;
};

OptimalPump optimal_pump(double tau_ps, double tau_pi, double gamma);

// N = sum_j w_j G(j, j) and B = sum_jk w_j w_k |G(j, k)|^2 over one subsystem.
struct CoherenceSums {
  double n = 0.0;
  double b = 0.0;
  double k() const { return n * n / b; }
};

CoherenceSums coherence_sums(const JsaGrid& grid, Subsystem which);

// K = N^2 / B from the first-order coherence of the chosen subsystem.
double schmidt_integral(const JsaGrid& grid, Subsystem which = Subsystem::signal);

struct SvdSchmidt {
  double k = 1.0;
  std::vector<double> weights;  // descending, sums to 1
};

inline constexpr int kMaxSvdDimension = 2048;

// Schmidt weights from the singular values of sqrt(w_s) psi sqrt(w_i).
SvdSchmidt schmidt_svd(const JsaGrid& grid);

struct SchmidtReport {
  double k_gauss = 0.0;
  double k_integral = 0.0;
  double k_svd = 0.0;
  double tau_p_min = 0.0;
  double k_min_gauss = 0.0;
  bool asymptotic_only = false;
  std::vector<double> mode_weights;
};

// All three estimators at the config's pump duration on a default exact grid.
SchmidtReport schmidt_report(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                             const GridSpec& spec = {});

enum class SweepModel { gauss, exact };
std::string to_string(SweepModel m);
SweepModel parse_sweep_model(const std::string& s);

struct SweepPoint {
  double tau_p = 0.0;
  double k = std::numeric_limits<double>::quiet_NaN();
  std::string error;
  bool ok() const { return error.empty(); }
};

// K(tau_p) over an ascending list of pump durations. The exact model re-estimates
// grid extents for every point. Per-point failures are recorded in SweepPoint::error.
std::vector<SweepPoint> sweep_pump_duration(const ScenarioConfig& config,
                                            const PhaseMatchSolution& solution,
                                            const std::vector<double>& tau_p, SweepModel model,
                                            const GridSpec& spec = {});

}  // namespace spdc
