#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::log(2.0));

void require_nonempty(const JsaGrid& grid) {
  if (grid.values.size() == 0 || grid.axis_s.size < 2 || grid.axis_i.size < 2)
    throw EmptyGrid("biphoton grid has no samples");
}

// Major axis from the eigen-decomposition of the quadratic form, used when the
// closed-form angle is not applicable (|eta| > 1 or tau_pi = 0).
double major_axis_angle(const GaussCoeffs& c) {
  const double phi = 0.5 * std::atan2(2.0 * c.c12, c.c11 - c.c22);  // largest eigenvalue
  double theta = phi + 0.5 * units::pi;
  while (theta > 0.5 * units::pi) theta -= units::pi;
  while (theta <= -0.5 * units::pi) theta += units::pi;
  return theta;
}

}  // namespace

Eigen::MatrixXcd coherence_matrix(const JsaGrid& grid, Subsystem which) {
  require_nonempty(grid);
  const auto& psi = grid.values;
  if (which == Subsystem::signal) {
    const Eigen::VectorXd w = trapezoid_weights(grid.axis_i);
    return (psi.conjugate() * w.asDiagonal()) * psi.transpose();
  }
  const Eigen::VectorXd w = trapezoid_weights(grid.axis_s);
  return psi.adjoint() * (w.asDiagonal() * psi);
}

double fwhm(const std::vector<double>& axis, const std::vector<double>& values) {
  if (axis.size() != values.size() || axis.size() < 3) throw Error("fwhm: need >= 3 samples");
  const auto peak_it = std::max_element(values.begin(), values.end());
  const std::size_t peak = static_cast<std::size_t>(peak_it - values.begin());
  const double half = 0.5 * *peak_it;
  if (!(half > 0.0)) throw Error("fwhm: curve has no positive peak");

  std::size_t l = peak;
  while (l > 0 && values[l] >= half) --l;
  std::size_t r = peak;
  while (r + 1 < values.size() && values[r] >= half) ++r;
  if (values[l] >= half || values[r] >= half)
    throw Error("fwhm: curve does not drop below half maximum inside the grid");

  auto cross = [&](std::size_t a, std::size_t b) {
    const double t = (half - values[a]) / (values[b] - values[a]);
    return axis[a] + t * (axis[b] - axis[a]);
  };
  return cross(r, r - 1) - cross(l, l + 1);
}

SpectrumCurve marginal_spectrum(const JsaGrid& grid, Subsystem which) {
  require_nonempty(grid);
  const Eigen::MatrixXd intensity = grid.values.cwiseAbs2();
  Eigen::VectorXd s;
  SpectrumCurve out;
  if (which == Subsystem::signal) {
    s = intensity * trapezoid_weights(grid.axis_i);
    out.axis = grid.axis_s.values();
  } else {
    s = intensity.transpose() * trapezoid_weights(grid.axis_s);
    out.axis = grid.axis_i.values();
  }
  const double peak = s.maxCoeff();
  if (!(peak > 0.0)) throw EmptyGrid("biphoton grid is identically zero");
  out.values.assign(s.data(), s.data() + s.size());
  for (double& v : out.values) v /= peak;
  out.fwhm = fwhm(out.axis, out.values);
  out.sigma = out.fwhm / kFwhmPerSigma;
  return out;
}

Bandwidths gauss_bandwidths(double tau_ps, double tau_pi, double tau_p, double gamma) {
  if (tau_ps == tau_pi)
    throw DegenerateGroupVelocities("gauss_bandwidths: tau_ps == tau_pi (eta = 1)");
  if (!(tau_p > 0.0) || !(gamma > 0.0)) throw Error("gauss_bandwidths: need tau_p, gamma > 0");
  Bandwidths b;
  if (tau_pi == 0.0) {
    const GaussCoeffs c = gauss_coeffs(tau_ps, tau_pi, tau_p, gamma);
    const double det = c.determinant();
    b.sigma_s = std::sqrt(c.c22 / (4.0 * det));
    b.sigma_i = std::sqrt(c.c11 / (4.0 * det));
    return b;
  }
  const double eta = tau_ps / tau_pi;
  const double pre = 1.0 / (std::sqrt(2.0) * std::abs(1.0 - eta));
  const double phase_matching = 1.0 / (2.0 * gamma * tau_pi * tau_pi);
  b.sigma_s = pre * std::sqrt(phase_matching + 1.0 / (tau_p * tau_p));
  b.sigma_i = pre * std::sqrt(phase_matching + eta * eta / (tau_p * tau_p));
  return b;
}

std::complex<double> coherence_gauss(const GaussCoeffs& c, double w, double wp,
                                     Subsystem which) {
  const double own = which == Subsystem::signal ? c.c11 : c.c22;
  const double other = which == Subsystem::signal ? c.c22 : c.c11;
  const double tau = which == Subsystem::signal ? c.tau_ps : c.tau_pi;
  const double prefactor = c.tau_p * c.tau_p / std::sqrt(8.0 * units::pi * other);
  const double diag = (2.0 * own * other - c.c12 * c.c12) / (2.0 * other);
  const double cross = c.c12 * c.c12 / other;
  const double envelope = std::exp(-diag * (w * w + wp * wp) + cross * w * wp);
  return prefactor * envelope * std::polar(1.0, -tau * (w - wp));
}

EllipseGeometry ellipse_geometry(const GaussCoeffs& c) {
  const double det = c.determinant();
  if (!(det > 0.0))
    throw DegenerateGroupVelocities("ellipse_geometry: quadratic form is not positive definite");
  EllipseGeometry e;
  const double mean = 0.5 * (c.c11 + c.c22);
  const double spread = std::sqrt(0.25 * (c.c11 - c.c22) * (c.c11 - c.c22) + c.c12 * c.c12);
  const double lambda_min = mean - spread;
  const double lambda_max = mean + spread;
  e.semi_axes = {1.0 / std::sqrt(lambda_min), 1.0 / std::sqrt(lambda_max)};

  const double eta = c.tau_pi != 0.0 ? c.tau_ps / c.tau_pi : 0.0;
  if (c.tau_pi == 0.0 || std::abs(eta) > 1.0) {
    e.theta = major_axis_angle(c);
    return e;
  }
  const double ratio = c.tau_p / c.tau_pi;
  const double num = ratio * ratio + 2.0 * c.gamma * eta;
  const double den = c.gamma * (1.0 - eta * eta);
  if (std::abs(den) <= 1e-12 * std::max(std::abs(num), c.gamma)) {
    // eta = -1 or 1: the arctan argument diverges.
    e.theta = num == 0.0 ? 0.0 : -0.25 * units::pi * (num > 0.0 ? 1.0 : -1.0);
  } else {
    e.theta = -0.5 * std::atan(num / den);
  }
  return e;
}

}  // namespace spdc
