#include "spdc/biphoton.hpp"

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"

namespace spdc {

double pump_spectrum(const PumpPulse& pulse, double omega_offset) {
  const double x = omega_offset * pulse.duration;
  return pulse.duration * std::exp(-0.5 * x * x);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

GaussCoeffs gauss_coeffs(double tau_ps, double tau_pi, double tau_p, double gamma) {
  if (!(tau_p > 0.0)) throw Error("gauss_coeffs: tau_p must be positive");
  if (!(gamma > 0.0)) throw Error("gauss_coeffs: gamma must be positive");
  GaussCoeffs c;
  const double half_p2 = 0.5 * tau_p * tau_p;
  c.c11 = half_p2 + gamma * tau_ps * tau_ps;
  c.c22 = half_p2 + gamma * tau_pi * tau_pi;
  c.c12 = half_p2 + gamma * tau_ps * tau_pi;
  c.gamma = gamma;
  c.tau_ps = tau_ps;
  c.tau_pi = tau_pi;
  c.tau_p = tau_p;
  return c;
}

std::vector<double> FrequencyAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(size));
  for (int j = 0; j < size; ++j) v[j] = (*this)[j];
  return v;
}

Eigen::VectorXd trapezoid_weights(const FrequencyAxis& axis) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(axis.size, axis.step());
  if (axis.size > 1) {
    w[0] *= 0.5;
    w[axis.size - 1] *= 0.5;
  }
  return w;
}

GridAxes default_axes(double tau_ps, double tau_pi, double tau_p, double gamma,
                      const GridSpec& spec) {
  if (spec.points < 2) throw Error("grid needs at least 2 points per axis");
  if (!(spec.extent_sigmas > 0.0)) throw Error("grid extent must be positive");
  const Bandwidths b = gauss_bandwidths(tau_ps, tau_pi, tau_p, gamma);
  GridAxes axes;
  axes.signal = {spec.extent_sigmas * b.sigma_s, spec.points};
  axes.idler = {spec.extent_sigmas * b.sigma_i, spec.points};
  return axes;
}

std::string to_string(JsaModel m) { return m == JsaModel::exact_sinc ? "exact_sinc" : "gaussian"; }

std::complex<double> jsa_gauss_value(const GaussCoeffs& c, const PumpPulse& pulse, double ws,
                                     double wi) {
  const double amplitude = pulse.gain * pulse.duration / std::sqrt(2.0 * units::pi);
  const double envelope = std::exp(-c.c11 * ws * ws - c.c22 * wi * wi - 2.0 * c.c12 * ws * wi);
  return amplitude * envelope * std::polar(1.0, c.tau_ps * ws + c.tau_pi * wi);
}

std::complex<double> jsa_exact_value(const ScenarioConfig& config,
                                     const PhaseMatchSolution& solution, const PumpPulse& pulse,
                                     double ws, double wi) {
  const double x = mismatch_full(config, solution, ws, wi);
  const double amplitude = pulse.gain / std::sqrt(2.0 * units::pi) * pump_spectrum(pulse, ws + wi);
  return amplitude * sinc(x) * std::polar(1.0, -x);
}

JsaGrid jsa_gauss(const GaussCoeffs& coeffs, const PumpPulse& pulse, const GridAxes& axes) {
  JsaGrid g;
  g.axis_s = axes.signal;
  g.axis_i = axes.idler;
  g.model = JsaModel::gaussian;
  g.tau_p = pulse.duration;
  g.values.resize(axes.signal.size, axes.idler.size);
  for (int j = 0; j < axes.signal.size; ++j)
    for (int l = 0; l < axes.idler.size; ++l)
      g.values(j, l) = jsa_gauss_value(coeffs, pulse, axes.signal[j], axes.idler[l]);
  return g;
}

JsaGrid jsa_exact(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                  const PumpPulse& pulse, const GridAxes& axes) {
  const CrystalModel& crystal = *config.crystal;
  const int ns = axes.signal.size;
  const int ni = axes.idler.size;
  const double es = axes.signal.half_extent;
  const double ei = axes.idler.half_extent;

  // Range checks up front; the per-point fill below cannot leave the validity interval.
  for (double w : {solution.omega_s - es, solution.omega_s + es})
    wavenumber(crystal, solution.signal, w);
  for (double w : {solution.omega_i - ei, solution.omega_i + ei})
    wavenumber(crystal, solution.idler, w);
  for (double w : {solution.omega_p - es - ei, solution.omega_p + es + ei})
    wavenumber(crystal, solution.pump, w);

  std::vector<double> ks(ns), ki(ni);
  for (int j = 0; j < ns; ++j) ks[j] = wavenumber(crystal, solution.signal, solution.omega_s + axes.signal[j]);
  for (int l = 0; l < ni; ++l) ki[l] = wavenumber(crystal, solution.idler, solution.omega_i + axes.idler[l]);
  const double sgn = config.geometry == Geometry::counter_propagating ? -1.0 : 1.0;
  const double half_lc = 0.5 * config.crystal_length;
  const double prefactor = pulse.gain / std::sqrt(2.0 * units::pi);

  JsaGrid g;
  g.axis_s = axes.signal;
  g.axis_i = axes.idler;
  g.model = JsaModel::exact_sinc;
  g.tau_p = pulse.duration;
  g.values.resize(ns, ni);
  parallel_for(static_cast<std::size_t>(ns), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int l = 0; l < ni; ++l) {
      const double sum = axes.signal[j] + axes.idler[l];
      const double kp = wavenumber(crystal, solution.pump, solution.omega_p + sum);
      const double x = half_lc * (ks[j] + sgn * ki[l] - kp + solution.grating_wavenumber);
      g.values(j, l) = prefactor * pump_spectrum(pulse, sum) * sinc(x) * std::polar(1.0, -x);
    }
  });
  return g;
}

}  // namespace spdc
