#include "spdc/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"

namespace spdc {

double schmidt_gauss(double tau_ps, double tau_pi, double tau_p, double gamma) {
  if (tau_ps == tau_pi)
    throw DegenerateGroupVelocities("schmidt_gauss: tau_ps == tau_pi, K diverges");
  if (tau_pi == 0.0) return schmidt_gauss(gauss_coeffs(tau_ps, tau_pi, tau_p, gamma));
  if (!(tau_p > 0.0) || !(gamma > 0.0)) throw Error("schmidt_gauss: need tau_p, gamma > 0");
  const double eta = tau_ps / tau_pi;
  const double r_i = tau_p / tau_pi;
  const double r_s = tau_ps / tau_p;
  const double bracket = 1.0 + eta * eta + r_i * r_i / (2.0 * gamma) + 2.0 * gamma * r_s * r_s;
  return std::sqrt(bracket) / std::abs(1.0 - eta);
}

double schmidt_gauss(const GaussCoeffs& c) {
  const double det = c.determinant();
  if (!(det > 0.0))
    throw DegenerateGroupVelocities("schmidt_gauss: c11 c22 - c12^2 vanishes, K diverges");
  return std::sqrt(c.c11 * c.c22 / det);
}

OptimalPump optimal_pump(double tau_ps, double tau_pi, double gamma) {
  OptimalPump out;
  if (tau_ps == 0.0) {
    out.asymptotic_only = true;
    out.tau_p_min = 0.0;
    out.k_min = 1.0;
    return out;
  }
  out.tau_p_min = std::sqrt(2.0 * gamma * std::abs(tau_ps * tau_pi));
  if (tau_pi == 0.0 || tau_ps == tau_pi) {
    out.k_min = std::numeric_limits<double>::infinity();
    return out;
  }
  const double eta = tau_ps / tau_pi;
  // (1 + eta)/(1 - eta) for eta > 0 and 1 for eta <= 0 when |eta| <= 1
  out.k_min = (1.0 + std::abs(eta)) / std::abs(1.0 - eta);
  return out;
}

CoherenceSums coherence_sums(const JsaGrid& grid, Subsystem which) {
  const Eigen::MatrixXcd g = coherence_matrix(grid, which);
  const Eigen::VectorXd w =
      trapezoid_weights(which == Subsystem::signal ? grid.axis_s : grid.axis_i);
  CoherenceSums s;
  s.n = (g.diagonal().real().array() * w.array()).sum();
  s.b = (w.transpose() * g.cwiseAbs2() * w)(0, 0);
  if (!(s.b > 0.0)) throw EmptyGrid("biphoton grid is identically zero");
  return s;
}

double schmidt_integral(const JsaGrid& grid, Subsystem which) {
  return coherence_sums(grid, which).k();
}

SvdSchmidt schmidt_svd(const JsaGrid& grid) {
  if (grid.values.size() == 0) throw EmptyGrid("biphoton grid has no samples");
  if (grid.values.rows() > kMaxSvdDimension || grid.values.cols() > kMaxSvdDimension)
    throw SvdFailure(fmt::format("grid {}x{} exceeds the dense SVD budget of {}^2",
                                 grid.values.rows(), grid.values.cols(), kMaxSvdDimension));
  const Eigen::VectorXd ws = trapezoid_weights(grid.axis_s).cwiseSqrt();
  const Eigen::VectorXd wi = trapezoid_weights(grid.axis_i).cwiseSqrt();
  const Eigen::MatrixXcd m = ws.asDiagonal() * grid.values * wi.asDiagonal();

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  if (svd.info() != Eigen::Success) throw SvdFailure("BDCSVD did not converge");
  const Eigen::VectorXd sigma2 = svd.singularValues().cwiseAbs2();
  const double total = sigma2.sum();
  if (!std::isfinite(total)) throw SvdFailure("non-finite singular values");
  if (!(total > 0.0)) throw EmptyGrid("biphoton grid is identically zero");

  SvdSchmidt out;
  out.weights.resize(static_cast<std::size_t>(sigma2.size()));
  double purity = 0.0;
  for (Eigen::Index k = 0; k < sigma2.size(); ++k) {
    const double lambda = sigma2[k] / total;
    out.weights[static_cast<std::size_t>(k)] = lambda;
    purity += lambda * lambda;
  }
  std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
  out.k = 1.0 / purity;
  return out;
}

SchmidtReport schmidt_report(const ScenarioConfig& config, const PhaseMatchSolution& solution,
                             const GridSpec& spec) {
  SchmidtReport r;
  const PumpPulse pulse{config.pump_duration};
  r.k_gauss = schmidt_gauss(solution.tau_ps, solution.tau_pi, pulse.duration, config.gamma);
  const OptimalPump opt = optimal_pump(solution.tau_ps, solution.tau_pi, config.gamma);
  r.tau_p_min = opt.tau_p_min;
  r.k_min_gauss = opt.k_min;
  r.asymptotic_only = opt.asymptotic_only;

  const GridAxes axes =
      default_axes(solution.tau_ps, solution.tau_pi, pulse.duration, config.gamma, spec);
  const JsaGrid grid = jsa_exact(config, solution, pulse, axes);
  r.k_integral = schmidt_integral(grid);
  const SvdSchmidt svd = schmidt_svd(grid);
  r.k_svd = svd.k;
  r.mode_weights = svd.weights;
  return r;
}

std::string to_string(SweepModel m) { return m == SweepModel::gauss ? "gauss" : "exact"; }

SweepModel parse_sweep_model(const std::string& s) {
  if (s == "gauss" || s == "gaussian") return SweepModel::gauss;
  if (s == "exact") return SweepModel::exact;
  throw ConfigError("unknown model '" + s + "' (expected gauss or exact)");
}

std::vector<SweepPoint> sweep_pump_duration(const ScenarioConfig& config,
                                            const PhaseMatchSolution& solution,
                                            const std::vector<double>& tau_p, SweepModel model,
                                            const GridSpec& spec) {
  if (!std::is_sorted(tau_p.begin(), tau_p.end()))
    throw Error("sweep_pump_duration: pump durations must be ascending");
  std::vector<SweepPoint> out(tau_p.size());
  parallel_for(out.size(), [&](std::size_t j) {
    SweepPoint& pt = out[j];
    pt.tau_p = tau_p[j];
    try {
      if (model == SweepModel::gauss) {
        pt.k = schmidt_gauss(solution.tau_ps, solution.tau_pi, pt.tau_p, config.gamma);
      } else {
        const PumpPulse pulse{pt.tau_p};
        const GridAxes axes =
            default_axes(solution.tau_ps, solution.tau_pi, pt.tau_p, config.gamma, spec);
        pt.k = schmidt_integral(jsa_exact(config, solution, pulse, axes));
      }
    } catch (const Error& e) {
      pt.error = e.what();
    }
  });
  return out;
}

}  // namespace spdc
