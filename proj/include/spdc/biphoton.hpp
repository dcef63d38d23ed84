#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spdc/phasematch.hpp"

namespace spdc {

// Gaussian pump pulse alpha_p(t) ~ exp(-t^2 / 2 tau_p^2). The gain constant only
// scales psi, and every quantity built on top of it is scale invariant.
struct PumpPulse {
  double duration = 0.0;  // s
  double gain = 1.0;
  double bandwidth() const { return 1.0 / duration; }
};

// Peak-normalized spectral amplitude tau_p exp(-Omega^2 tau_p^2 / 2).
double pump_spectrum(const PumpPulse& pulse, double omega_offset);

// sin(x)/x with a series branch for |x| < 1e-4.
double sinc(double x);

// Quadratic-form coefficients of the Gaussian biphoton amplitude, in s^2.
struct GaussCoeffs {
  double c11 = 0.0;
  double c22 = 0.0;
  double c12 = 0.0;
  double gamma = 0.193;
  // Inputs the coefficients were built from.
  double tau_ps = 0.0;
  double tau_pi = 0.0;
  double tau_p = 0.0;

  double determinant() const { return c11 * c22 - c12 * c12; }
};

GaussCoeffs gauss_coeffs(double tau_ps, double tau_pi, double tau_p, double gamma);

// Uniform axis of angular-frequency offsets symmetric about zero (rad/s).
struct FrequencyAxis {
  double half_extent = 0.0;
  int size = 0;

  double step() const { return size > 1 ? 2.0 * half_extent / (size - 1) : 0.0; }
  double operator[](int j) const { return -half_extent + j * step(); }
  std::vector<double> values() const;
};

// Trapezoidal quadrature weights on the axis.
Eigen::VectorXd trapezoid_weights(const FrequencyAxis& axis);

struct GridAxes {
  FrequencyAxis signal;
  FrequencyAxis idler;
};

struct GridSpec {
  int points = 512;
  double extent_sigmas = 5.0;
};

// Per-axis extents of +-extent_sigmas Gaussian marginal widths. The axes are
// asymmetric because the backward idler can be ~100x narrower than the signal.
GridAxes default_axes(double tau_ps, double tau_pi, double tau_p, double gamma,
                      const GridSpec& spec = {});

enum class JsaModel { exact_sinc, gaussian };
std::string to_string(JsaModel m);

struct JsaGrid {
  FrequencyAxis axis_s;
  FrequencyAxis axis_i;
  Eigen::MatrixXcd values;  // rows follow axis_s, columns axis_i
  JsaModel model = JsaModel::gaussian;
  double tau_p = 0.0;
};

std::complex<double> jsa_gauss_value(const GaussCoeffs& coeffs, const PumpPulse& pulse,
                                     double omega_s, double omega_i);

std::complex<double> jsa_exact_value(const ScenarioConfig& config,
                                     const PhaseMatchSolution& solution, const PumpPulse& pulse,
                                     double omega_s, double omega_i);

JsaGrid jsa_gauss(const GaussCoeffs& coeffs, const PumpPulse& pulse, const GridAxes& axes);

// Full-dispersion sinc amplitude; throws OutOfValidityRange if any grid
// frequency of any of the three waves leaves the Sellmeier range.
JsaGrid jsa_exact(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                  const PumpPulse& pulse, const GridAxes& axes);

}  // namespace spdc
