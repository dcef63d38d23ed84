#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "spdc/errors.hpp"
#include "spdc/io.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"

using namespace spdc;
using units::pi;
using units::ps;

namespace {

constexpr double kFwhm = 2.3548200450309493;

// Major-axis angle of exp(-[x y] C [x y]^T), in (-pi/2, pi/2].
double major_axis_oracle(const GaussCoeffs& c) {
  Eigen::Matrix2d m;
  m << c.c11, c.c12, c.c12, c.c22;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const Eigen::Vector2d v = es.eigenvectors().col(0);  // smallest eigenvalue
  double theta = std::atan2(v[1], v[0]);
  while (theta > pi / 2) theta -= pi;
  while (theta <= -pi / 2) theta += pi;
  return theta;
}

double angle_diff(double a, double b) {
  double d = std::fmod(a - b, pi);
  if (d > pi / 2) d -= pi;
  if (d < -pi / 2) d += pi;
  return std::abs(d);
}

}  // namespace

TEST_CASE("fwhm of a sampled Gaussian") {
  const double sigma = 1.7;
  std::vector<double> x, y;
  for (int j = -400; j <= 400; ++j) {
    x.push_back(j * 0.02);
    y.push_back(std::exp(-0.5 * x.back() * x.back() / (sigma * sigma)));
  }
  CHECK(fwhm(x, y) == doctest::Approx(kFwhm * sigma).epsilon(1e-4));
  std::vector<double> flat(x.size(), 1.0);
  CHECK_THROWS_AS(fwhm(x, flat), Error);
}

TEST_CASE("bandwidths: eta form equals the quadratic-form expressions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const double tps = u(rng) * ps, tpi = u(rng) * ps, tp = (0.05 + std::abs(u(rng))) * ps;
    if (std::abs(tps - tpi) < 0.05 * ps) continue;
    const double g = 0.193;
    const Bandwidths b = gauss_bandwidths(tps, tpi, tp, g);
    const GaussCoeffs c = gauss_coeffs(tps, tpi, tp, g);
    const double det = c.c11 * c.c22 - c.c12 * c.c12;
    CHECK(b.sigma_s == doctest::Approx(std::sqrt(c.c22 / (4 * det))).epsilon(1e-10));
    CHECK(b.sigma_i == doctest::Approx(std::sqrt(c.c11 / (4 * det))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(gauss_bandwidths(0.3 * ps, 0.3 * ps, 1.0 * ps, 0.193), DegenerateGroupVelocities);
}

TEST_CASE("marginal spectra of Gaussian grids match the closed-form widths") {
  for (auto [tps, tpi, tp] : {std::tuple{0.67, 63.0, 4.05}, {0.0, 0.72, 0.1}, {-0.237, 0.237, 0.147}}) {
    const GaussCoeffs c = gauss_coeffs(tps * ps, tpi * ps, tp * ps, 0.193);
    const JsaGrid g = jsa_gauss(c, PumpPulse{tp * ps}, default_axes(tps * ps, tpi * ps, tp * ps, 0.193));
    const Bandwidths b = gauss_bandwidths(tps * ps, tpi * ps, tp * ps, 0.193);
    const SpectrumCurve s = marginal_spectrum(g, Subsystem::signal);
    const SpectrumCurve i = marginal_spectrum(g, Subsystem::idler);
    CHECK(s.fwhm == doctest::Approx(kFwhm * b.sigma_s).epsilon(1e-4));
    CHECK(i.fwhm == doctest::Approx(kFwhm * b.sigma_i).epsilon(1e-4));
    CHECK(*std::max_element(s.values.begin(), s.values.end()) == doctest::Approx(1.0));
  }
}

TEST_CASE("exact spectra at the near-separable points follow the Gaussian widths") {
  for (auto [id, tp] : {std::pair{"ppktp", 4.05}, {"kdp", 0.1}, {"bbo", 0.147}}) {
    const io::Scenario sc = io::load_scenario(io::bundled_scenario(id));
    const PhaseMatchSolution sol = solve_central_frequencies(sc.config);
    const JsaGrid g = jsa_exact(sc.config, sol, PumpPulse{tp * ps},
                                default_axes(sol.tau_ps, sol.tau_pi, tp * ps, sc.config.gamma, {256, 5.0}));
    const Bandwidths b = gauss_bandwidths(sol.tau_ps, sol.tau_pi, tp * ps, sc.config.gamma);
    CHECK(marginal_spectrum(g, Subsystem::signal).fwhm ==
          doctest::Approx(kFwhm * b.sigma_s).epsilon(0.10));
    CHECK(marginal_spectrum(g, Subsystem::idler).fwhm ==
          doctest::Approx(kFwhm * b.sigma_i).epsilon(0.10));
  }
}

TEST_CASE("numerical coherence of a Gaussian grid matches the closed form") {
  const double tps = 0.4 * ps, tpi = -0.9 * ps, tp = 0.6 * ps;
  const GaussCoeffs c = gauss_coeffs(tps, tpi, tp, 0.193);
  const JsaGrid g = jsa_gauss(c, PumpPulse{tp}, default_axes(tps, tpi, tp, 0.193, {301, 7.0}));
  for (Subsystem which : {Subsystem::signal, Subsystem::idler}) {
    const Eigen::MatrixXcd m = coherence_matrix(g, which);
    const FrequencyAxis& ax = which == Subsystem::signal ? g.axis_s : g.axis_i;
    const double scale = std::abs(coherence_gauss(c, 0.0, 0.0, which));
    for (auto [a, b] : {std::pair{150, 150}, {120, 170}, {100, 140}, {200, 90}}) {
      const auto num = m(a, b);
      const auto ref = coherence_gauss(c, ax[a], ax[b], which);
      CHECK(std::abs(num - ref) <= 1e-8 * scale);
    }
    CHECK((m - m.adjoint()).norm() <= 1e-12 * m.norm());
  }
}

TEST_CASE("ellipse orientation against the quadratic-form eigenvectors") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int tested = 0;
  while (tested < 100) {
    const double tpi = (0.2 + std::abs(u(rng))) * ps * (u(rng) > 0 ? 1 : -1);
    const double tps = 0.95 * u(rng) * std::abs(tpi);  // |eta| < 1
    const double tp = (0.02 + 2.0 * std::abs(u(rng))) * ps;
    const GaussCoeffs c = gauss_coeffs(tps, tpi, tp, 0.193);
    const EllipseGeometry e = ellipse_geometry(c);
    CHECK(angle_diff(e.theta, major_axis_oracle(c)) < 1e-9);
    Eigen::Matrix2d m;
    m << c.c11, c.c12, c.c12, c.c22;
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues();
    CHECK(e.semi_axes[0] == doctest::Approx(1.0 / std::sqrt(ev[0])).epsilon(1e-10));
    CHECK(e.semi_axes[1] == doctest::Approx(1.0 / std::sqrt(ev[1])).epsilon(1e-10));
    ++tested;
  }
}

TEST_CASE("ellipse limits") {
  const double g = 0.193;
  // Long pulses: anti-diagonal.
  CHECK(ellipse_geometry(gauss_coeffs(0.67 * ps, 63 * ps, 6300 * ps, g)).theta ==
        doctest::Approx(-pi / 4).epsilon(1e-4));
  // eta = 0, short pulse: phase matching alone, axis along Omega_s.
  CHECK(std::abs(ellipse_geometry(gauss_coeffs(0.0, 0.72 * ps, 0.036 * ps, g)).theta) < pi / 180);
  // eta = -1, very short pulse: diagonal.
  CHECK(ellipse_geometry(gauss_coeffs(-0.237 * ps, 0.237 * ps, 0.0237 * ps, g)).theta ==
        doctest::Approx(pi / 4).epsilon(1e-6));
  // Exactly eta = -1 uses the limiting branch.
  const double t = ellipse_geometry(gauss_coeffs(-0.3 * ps, 0.3 * ps, 0.01 * ps, g)).theta;
  CHECK(t == doctest::Approx(pi / 4));
  // |eta| > 1 falls back to the eigen-decomposition.
  const GaussCoeffs big = gauss_coeffs(2.0 * ps, 0.5 * ps, 0.7 * ps, g);
  CHECK(angle_diff(ellipse_geometry(big).theta, major_axis_oracle(big)) < 1e-9);
}

TEST_CASE("empty grids are rejected") {
  JsaGrid g;
  CHECK_THROWS_AS(coherence_matrix(g, Subsystem::signal), EmptyGrid);
  CHECK_THROWS_AS(marginal_spectrum(g, Subsystem::idler), EmptyGrid);
}
