#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spdc/biphoton.hpp"
#include "spdc/errors.hpp"
#include "spdc/io.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"

using namespace spdc;
using units::ps;

TEST_CASE("sinc and its small-argument branch") {
  CHECK(sinc(0.0) == 1.0);
  for (double x : {1e-6, 5e-5, 9.99e-5, 1.0001e-4, 0.3, 2.0, -7.5})
    CHECK(sinc(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-15));
}

TEST_CASE("pump spectrum") {
  const PumpPulse p{2.0 * ps};
  CHECK(pump_spectrum(p, 0.0) == doctest::Approx(2.0 * ps));
  CHECK(pump_spectrum(p, 1.0 / p.duration) == doctest::Approx(2.0 * ps * std::exp(-0.5)));
}

TEST_CASE("Gaussian coefficients") {
  const double tps = 0.3 * ps, tpi = -1.1 * ps, tp = 0.7 * ps, g = 0.193;
  const GaussCoeffs c = gauss_coeffs(tps, tpi, tp, g);
  CHECK(c.c11 == doctest::Approx(tp * tp / 2 + g * tps * tps));
  CHECK(c.c22 == doctest::Approx(tp * tp / 2 + g * tpi * tpi));
  CHECK(c.c12 == doctest::Approx(tp * tp / 2 + g * tps * tpi));
  CHECK(c.determinant() ==
        doctest::Approx(g * tp * tp * (tps - tpi) * (tps - tpi) / 2).epsilon(1e-12));
  CHECK_THROWS_AS(gauss_coeffs(tps, tpi, 0.0, g), Error);
  CHECK_THROWS_AS(gauss_coeffs(tps, tpi, tp, -1.0), Error);
}

TEST_CASE("Gaussian amplitude against its closed form") {
  const double tps = 0.3 * ps, tpi = -1.1 * ps, tp = 0.7 * ps, g = 0.193;
  const GaussCoeffs c = gauss_coeffs(tps, tpi, tp, g);
  const PumpPulse pulse{tp};
  for (auto [ws, wi] : {std::pair{0.0, 0.0}, {1.3e12, -0.4e12}, {-2e12, 0.9e12}}) {
    const double c11 = tp * tp / 2 + g * tps * tps, c22 = tp * tp / 2 + g * tpi * tpi,
                 c12 = tp * tp / 2 + g * tps * tpi;
    const std::complex<double> oracle =
        tp / std::sqrt(2 * units::pi) * std::polar(1.0, tps * ws + tpi * wi) *
        std::exp(-c11 * ws * ws - c22 * wi * wi - 2 * c12 * ws * wi);
    const auto v = jsa_gauss_value(c, pulse, ws, wi);
    CHECK(std::abs(v - oracle) <= 1e-13 * std::abs(oracle) + 1e-300);
  }
}

TEST_CASE("exact amplitude agrees with the Gaussian one at the centre and is a sinc") {
  const io::Scenario s = io::load_scenario(io::bundled_scenario("ppktp"));
  const PhaseMatchSolution sol = solve_central_frequencies(s.config);
  const PumpPulse pulse{4.05 * ps};
  const GaussCoeffs c = gauss_coeffs(sol.tau_ps, sol.tau_pi, pulse.duration, s.config.gamma);
  const auto e0 = jsa_exact_value(s.config, sol, pulse, 0.0, 0.0);
  const auto g0 = jsa_gauss_value(c, pulse, 0.0, 0.0);
  CHECK(std::abs(e0) == doctest::Approx(std::abs(g0)).epsilon(1e-6));

  // |psi| = |alpha_p(Os + Oi)| |sinc(x)| with x the full mismatch.
  const double ws = 0.2e12, wi = -0.01e12;
  const double x = mismatch_full(s.config, sol, ws, wi);
  const double expected = pump_spectrum(pulse, ws + wi) * std::abs(sinc(x)) / std::sqrt(2 * units::pi);
  CHECK(std::abs(jsa_exact_value(s.config, sol, pulse, ws, wi)) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("frequency axes and trapezoid weights") {
  const FrequencyAxis a{3.0, 7};
  CHECK(a.step() == doctest::Approx(1.0));
  CHECK(a[0] == doctest::Approx(-3.0));
  CHECK(a[6] == doctest::Approx(3.0));
  const Eigen::VectorXd w = trapezoid_weights(a);
  CHECK(w.sum() == doctest::Approx(6.0));
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[3] == doctest::Approx(1.0));

  // Integral of exp(-x^2) over a wide axis is sqrt(pi).
  const FrequencyAxis b{8.0, 401};
  const Eigen::VectorXd wb = trapezoid_weights(b);
  double sum = 0.0;
  for (int j = 0; j < b.size; ++j) sum += wb[j] * std::exp(-b[j] * b[j]);
  CHECK(sum == doctest::Approx(std::sqrt(units::pi)).epsilon(1e-12));
}

TEST_CASE("default axes span the requested number of marginal widths") {
  const double tps = 0.67 * ps, tpi = 63.0 * ps, tp = 4.05 * ps, g = 0.193;
  const GridAxes axes = default_axes(tps, tpi, tp, g, GridSpec{128, 4.0});
  const Bandwidths b = gauss_bandwidths(tps, tpi, tp, g);
  CHECK(axes.signal.half_extent == doctest::Approx(4.0 * b.sigma_s));
  CHECK(axes.idler.half_extent == doctest::Approx(4.0 * b.sigma_i));
  CHECK(axes.signal.size == 128);
  CHECK(axes.idler.half_extent < axes.signal.half_extent / 5.0);
}

TEST_CASE("exact grid outside the Sellmeier range throws") {
  const io::Scenario s = io::load_scenario(io::bundled_scenario("kdp"));
  const PhaseMatchSolution sol = solve_central_frequencies(s.config);
  GridAxes axes{{2000e12, 16}, {10e12, 16}};
  CHECK_THROWS_AS(jsa_exact(s.config, sol, PumpPulse{0.1 * ps}, axes), OutOfValidityRange);
}

TEST_CASE("grid layout: rows follow the signal axis") {
  const GaussCoeffs c = gauss_coeffs(0.1 * ps, 0.9 * ps, 0.5 * ps, 0.193);
  const GridAxes axes{{4e12, 9}, {2e12, 5}};
  const JsaGrid g = jsa_gauss(c, PumpPulse{0.5 * ps}, axes);
  REQUIRE(g.values.rows() == 9);
  REQUIRE(g.values.cols() == 5);
  CHECK(std::abs(g.values(2, 4) - jsa_gauss_value(c, PumpPulse{0.5 * ps}, axes.signal[2],
                                                  axes.idler[4])) < 1e-30);
  CHECK(g.model == JsaModel::gaussian);
}
