#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "spdc/errors.hpp"
#include "spdc/io.hpp"
#include "spdc/schmidt.hpp"
#include "spdc/units.hpp"

using namespace spdc;
using units::ps;

namespace {

// Schmidt number from the eigenvalues of the Gram matrix M^H M of the weighted grid.
double k_gram_oracle(const JsaGrid& g) {
  Eigen::VectorXd ws = trapezoid_weights(g.axis_s).cwiseSqrt();
  Eigen::VectorXd wi = trapezoid_weights(g.axis_i).cwiseSqrt();
  const Eigen::MatrixXcd m = ws.asDiagonal() * g.values * wi.asDiagonal();
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double total = ev.sum();
  return 1.0 / (ev / total).squaredNorm();
}

JsaGrid random_grid(std::mt19937_64& rng, int ns, int ni) {
  std::normal_distribution<double> n(0.0, 1.0);
  JsaGrid g;
  g.axis_s = {1.0, ns};
  g.axis_i = {1.5, ni};
  g.values.resize(ns, ni);
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ni; ++b) g.values(a, b) = {n(rng), n(rng)};
  return g;
}

// Normalized Hermite-Gauss functions h0, h1 on the axis.
double h(int order, double x) {
  const double g = std::exp(-0.5 * x * x) / std::pow(units::pi, 0.25);
  return order == 0 ? g : std::sqrt(2.0) * x * g;
}

}  // namespace

TEST_CASE("closed-form K: eta form equals the quadratic-form expression") {
  for (auto [tps, tpi, tp] : {std::tuple{0.67, 63.0, 4.05}, {-0.237, 0.237, 0.147},
                              {0.0, 0.72, 0.1}, {1.3, -0.4, 2.0}}) {
    const double g = 0.193;
    const double c11 = tp * tp / 2 + g * tps * tps, c22 = tp * tp / 2 + g * tpi * tpi,
                 c12 = tp * tp / 2 + g * tps * tpi;
    const double oracle = std::sqrt(c11 * c22 / (c11 * c22 - c12 * c12));
    CHECK(schmidt_gauss(tps * ps, tpi * ps, tp * ps, g) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(schmidt_gauss(gauss_coeffs(tps * ps, tpi * ps, tp * ps, g)) ==
          doctest::Approx(oracle).epsilon(1e-12));
  }
  // tau_pi = 0 goes through the quadratic form.
  CHECK(schmidt_gauss(0.5 * ps, 0.0, 0.3 * ps, 0.193) ==
        doctest::Approx(schmidt_gauss(gauss_coeffs(0.5 * ps, 0.0, 0.3 * ps, 0.193))));
  CHECK_THROWS_AS(schmidt_gauss(0.4 * ps, 0.4 * ps, 1.0 * ps, 0.193), DegenerateGroupVelocities);
}

TEST_CASE("optimal pump duration and minimal K") {
  const OptimalPump p = optimal_pump(0.67 * ps, 63.0 * ps, 0.193);
  CHECK(p.tau_p_min / ps == doctest::Approx(std::sqrt(2 * 0.193 * 0.67 * 63.0)));
  CHECK(p.tau_p_min / ps == doctest::Approx(4.05).epsilon(0.01));
  const double eta = 0.67 / 63.0;
  CHECK(p.k_min == doctest::Approx((1 + eta) / (1 - eta)));
  CHECK(schmidt_gauss(0.67 * ps, 63.0 * ps, p.tau_p_min, 0.193) == doctest::Approx(p.k_min));

  const OptimalPump b = optimal_pump(-0.237 * ps, 0.237 * ps, 0.193);
  CHECK(b.tau_p_min / ps == doctest::Approx(0.147).epsilon(0.01));
  CHECK(b.k_min == doctest::Approx(1.0));
  CHECK(optimal_pump(-0.1 * ps, 0.5 * ps, 0.193).k_min == doctest::Approx(1.0));

  const OptimalPump z = optimal_pump(0.0, 0.72 * ps, 0.193);
  CHECK(z.asymptotic_only);
  CHECK(z.k_min == 1.0);
  // With tau_ps = 0, K decreases monotonically towards 1 as tau_p shrinks.
  double prev = 1e300;
  for (double tp = 10.0; tp > 1e-3; tp /= 2) {
    const double k = schmidt_gauss(0.0, 0.72 * ps, tp * ps, 0.193);
    CHECK(k < prev);
    CHECK(k > 1.0);
    prev = k;
  }
}

TEST_CASE("SVD and integral estimators agree with the Gram-matrix oracle") {
  std::mt19937_64 rng(7);
  for (auto [ns, ni] : {std::pair{12, 12}, {20, 9}, {7, 31}}) {
    const JsaGrid g = random_grid(rng, ns, ni);
    const double oracle = k_gram_oracle(g);
    CHECK(schmidt_svd(g).k == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(schmidt_integral(g, Subsystem::signal) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(schmidt_integral(g, Subsystem::idler) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("two-mode state with known Schmidt weights") {
  const double p0 = 0.8, p1 = 0.2;
  JsaGrid g;
  g.axis_s = {9.0, 321};
  g.axis_i = {9.0, 301};
  g.values.resize(g.axis_s.size, g.axis_i.size);
  for (int a = 0; a < g.axis_s.size; ++a)
    for (int b = 0; b < g.axis_i.size; ++b) {
      const double x = g.axis_s[a], y = g.axis_i[b];
      g.values(a, b) = std::sqrt(p0) * h(0, x) * h(0, y) +
                       std::complex<double>(0, 1) * std::sqrt(p1) * h(1, x) * h(1, y);
    }
  const double k = 1.0 / (p0 * p0 + p1 * p1);
  const SvdSchmidt svd = schmidt_svd(g);
  CHECK(svd.k == doctest::Approx(k).epsilon(1e-9));
  CHECK(schmidt_integral(g) == doctest::Approx(k).epsilon(1e-9));
  REQUIRE(svd.weights.size() >= 2);
  CHECK(svd.weights[0] == doctest::Approx(p0).epsilon(1e-9));
  CHECK(svd.weights[1] == doctest::Approx(p1).epsilon(1e-9));
  CHECK(svd.weights[2] < 1e-20);
}

TEST_CASE("Gaussian grid reproduces the closed-form K") {
  const double tps = 0.67 * ps, tpi = 63.0 * ps, g = 0.193;
  for (double tp : {0.5, 4.05, 30.0}) {
    const GaussCoeffs c = gauss_coeffs(tps, tpi, tp * ps, g);
    const JsaGrid grid = jsa_gauss(c, PumpPulse{tp * ps}, default_axes(tps, tpi, tp * ps, g, {256, 6.0}));
    CHECK(schmidt_integral(grid) == doctest::Approx(schmidt_gauss(tps, tpi, tp * ps, g)).epsilon(1e-4));
  }
}

TEST_CASE("Schmidt properties over random grids") {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<int> size(3, 24);
  for (int t = 0; t < 120; ++t) {
    const int ns = size(rng), ni = size(rng);
    const JsaGrid g = random_grid(rng, ns, ni);
    const SvdSchmidt s = schmidt_svd(g);
    CHECK(s.k >= 1.0 - 1e-12);
    CHECK(s.k <= std::min(ns, ni) + 1e-9);
    double sum = 0.0;
    for (std::size_t k = 0; k < s.weights.size(); ++k) {
      sum += s.weights[k];
      if (k > 0) CHECK(s.weights[k] <= s.weights[k - 1]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(schmidt_integral(g) == doctest::Approx(s.k).epsilon(1e-10));
    const CoherenceSums a = coherence_sums(g, Subsystem::signal);
    const CoherenceSums b = coherence_sums(g, Subsystem::idler);
    CHECK(a.n == doctest::Approx(b.n).epsilon(1e-12));
    CHECK(a.b == doctest::Approx(b.b).epsilon(1e-12));
  }
}

TEST_CASE("estimator failure modes") {
  JsaGrid zero;
  zero.axis_s = {1.0, 8};
  zero.axis_i = {1.0, 8};
  zero.values = Eigen::MatrixXcd::Zero(8, 8);
  CHECK_THROWS_AS(schmidt_svd(zero), EmptyGrid);
  CHECK_THROWS_AS(schmidt_integral(zero), EmptyGrid);

  JsaGrid empty;
  CHECK_THROWS_AS(schmidt_svd(empty), EmptyGrid);

  JsaGrid huge;
  huge.axis_s = {1.0, kMaxSvdDimension + 1};
  huge.axis_i = {1.0, 2};
  huge.values = Eigen::MatrixXcd::Ones(kMaxSvdDimension + 1, 2);
  CHECK_THROWS_AS(schmidt_svd(huge), SvdFailure);
}

TEST_CASE("pump-duration sweep") {
  const io::Scenario s = io::load_scenario(io::bundled_scenario("ppktp"));
  const PhaseMatchSolution sol = solve_central_frequencies(s.config);
  const std::vector<double> taus{1.0 * ps, 4.05 * ps, 20.0 * ps};
  const auto gauss = sweep_pump_duration(s.config, sol, taus, SweepModel::gauss);
  REQUIRE(gauss.size() == 3);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(gauss[j].ok());
    CHECK(gauss[j].tau_p == taus[j]);
    CHECK(gauss[j].k == doctest::Approx(schmidt_gauss(sol.tau_ps, sol.tau_pi, taus[j], s.config.gamma)));
  }
  const auto exact = sweep_pump_duration(s.config, sol, taus, SweepModel::exact, GridSpec{128, 5.0});
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(exact[j].ok());
    // The sinc adds weak side-lobe correlations on top of the Gaussian estimate.
    CHECK(exact[j].k >= gauss[j].k * (1 - 1e-3));
    CHECK(exact[j].k <= gauss[j].k * 1.3);
  }
  CHECK_THROWS_AS(sweep_pump_duration(s.config, sol, {2.0 * ps, 1.0 * ps}, SweepModel::gauss), Error);
  // Per-point failures are recorded instead of aborting the sweep.
  const auto bad = sweep_pump_duration(s.config, sol, {-1.0 * ps, 1.0 * ps}, SweepModel::gauss);
  CHECK_FALSE(bad[0].ok());
  CHECK(bad[1].ok());
  CHECK(parse_sweep_model("gauss") == SweepModel::gauss);
  CHECK_THROWS_AS(parse_sweep_model("fast"), ConfigError);
}

TEST_CASE("schmidt report") {
  const io::Scenario s = io::load_scenario(io::bundled_scenario("bbo"));
  const PhaseMatchSolution sol = solve_central_frequencies(s.config);
  const SchmidtReport r = schmidt_report(s.config, sol, GridSpec{128, 5.0});
  CHECK(r.k_svd == doctest::Approx(r.k_integral).epsilon(1e-9));
  CHECK(r.k_gauss == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.k_integral > r.k_gauss);
  CHECK(r.tau_p_min / ps == doctest::Approx(0.1472).epsilon(1e-3));
  CHECK_FALSE(r.mode_weights.empty());
}
