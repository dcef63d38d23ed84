#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spdc/biphoton.hpp"

namespace spdc {

enum class Subsystem { signal, idler };

struct SpectrumCurve {
  std::vector<double> axis;    // rad/s offsets
  std::vector<double> values;  // normalized to unit peak
  double fwhm = 0.0;           // rad/s
  double sigma = 0.0;          // fwhm / (2 sqrt(2 ln 2))
};

struct Bandwidths {
  double sigma_s = 0.0;  // rad/s
  double sigma_i = 0.0;
};

struct EllipseGeometry {
  double theta = 0.0;                    // major-axis angle to the Omega_s axis, rad
  std::array<double, 2> semi_axes{};     // {major, minor}, rad/s
};

// First-order coherence kernel on the grid,
// G(j, k) = sum_l w_l psi*(j, l) psi(k, l) over the conjugate axis (trapezoid weights w).
Eigen::MatrixXcd coherence_matrix(const JsaGrid& grid, Subsystem which);

// Diagonal of the coherence kernel normalized to unit peak, with FWHM by linear
// interpolation between samples.
SpectrumCurve marginal_spectrum(const JsaGrid& grid, Subsystem which);

// Full width at half maximum of a sampled single-peaked curve. Throws Error if
// the curve does not fall below half maximum on both sides of its peak.
double fwhm(const std::vector<double>& axis, const std::vector<double>& values);

// Gaussian-model marginal widths; throws DegenerateGroupVelocities at eta = 1.
Bandwidths gauss_bandwidths(double tau_ps, double tau_pi, double tau_p, double gamma);

// Closed-form G^(1) of the Gaussian amplitude (gain g = 1).
std::complex<double> coherence_gauss(const GaussCoeffs& coeffs, double omega,
                                     double omega_prime, Subsystem which);

// Orientation of the 1/e^2 contour c11 Ws^2 + c22 Wi^2 + 2 c12 Ws Wi = 1.
EllipseGeometry ellipse_geometry(const GaussCoeffs& coeffs);

}  // namespace spdc
