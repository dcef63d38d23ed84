// Python module. Times in ps, frequency offsets in rad/ps, wavelengths in nm.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spdc/errors.hpp"
#include "spdc/io.hpp"
#include "spdc/schmidt.hpp"
#include "spdc/spectra.hpp"
#include "spdc/units.hpp"

namespace py = pybind11;
using namespace spdc;
using units::ps;
using units::rad_per_ps;

namespace {

io::Scenario load(const std::string& path_or_id) {
  std::filesystem::path p(path_or_id);
  if (p.extension() != ".json") p = io::bundled_scenario(path_or_id);
  return io::load_scenario(p);
}

py::dict solution_dict(const PhaseMatchSolution& s) {
  py::dict d;
  d["lambda_s_nm"] = s.lambda_s / units::nm;
  d["lambda_i_nm"] = s.lambda_i / units::nm;
  d["tau_ps_ps"] = s.tau_ps / ps;
  d["tau_pi_ps"] = s.tau_pi / ps;
  d["eta"] = s.eta;
  d["tuning_angle_deg"] = s.tuning_angle / units::deg;
  d["swapped"] = s.swapped;
  return d;
}

py::dict optimum_dict(const OptimalPump& o) {
  py::dict d;
  d["tau_p_min_ps"] = o.tau_p_min / ps;
  d["K_min"] = o.k_min;
  d["asymptotic_only"] = o.asymptotic_only;
  return d;
}

JsaGrid grid_from_array(const Eigen::MatrixXcd& values, double half_s, double half_i) {
  JsaGrid g;
  g.axis_s = {half_s * rad_per_ps, static_cast<int>(values.rows())};
  g.axis_i = {half_i * rad_per_ps, static_cast<int>(values.cols())};
  g.values = values;
  return g;
}

std::vector<double> scaled(std::vector<double> v, double unit) {
  for (double& x : v) x /= unit;
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frequency correlations of SPDC photon pairs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NoRootInBracket>(m, "NoRootInBracket", base.ptr());
  py::register_exception<OutOfValidityRange>(m, "OutOfValidityRange", base.ptr());
  py::register_exception<DegenerateGroupVelocities>(m, "DegenerateGroupVelocities", base.ptr());
  py::register_exception<EmptyGrid>(m, "EmptyGrid", base.ptr());
  py::register_exception<SvdFailure>(m, "SvdFailure", base.ptr());

  py::class_<io::Scenario>(m, "Scenario")
      .def_property_readonly("id", [](const io::Scenario& s) { return s.config.id; })
      .def_property_readonly("gamma", [](const io::Scenario& s) { return s.config.gamma; })
      .def_property_readonly("pump_duration_ps",
                             [](const io::Scenario& s) { return s.config.pump_duration / ps; })
      .def_property_readonly("geometry", [](const io::Scenario& s) { return to_string(s.config.geometry); })
      .def_property_readonly("config_hash", [](const io::Scenario& s) { return io::config_hash(s); })
      .def("__repr__", [](const io::Scenario& s) { return "<Scenario " + s.config.id + ">"; });

  m.def("load_scenario", &load, py::arg("path_or_id"),
        "Load a scenario file, or a bundled one by id (ppktp, kdp, bbo).");
  m.def("data_dir", [] { return io::data_dir().string(); });
  m.def("solve", [](const io::Scenario& s) { return solution_dict(solve_central_frequencies(s.config)); },
        py::arg("scenario"));

  m.def("schmidt_gauss",
        [](double tps, double tpi, double tp, double gamma) { return schmidt_gauss(tps * ps, tpi * ps, tp * ps, gamma); },
        py::arg("tau_ps"), py::arg("tau_pi"), py::arg("tau_p"), py::arg("gamma") = 0.193);
  m.def("optimal_pump",
        [](double tps, double tpi, double gamma) { return optimum_dict(optimal_pump(tps * ps, tpi * ps, gamma)); },
        py::arg("tau_ps"), py::arg("tau_pi"), py::arg("gamma") = 0.193);
  m.def("gauss_bandwidths",
        [](double tps, double tpi, double tp, double gamma) {
          const Bandwidths b = gauss_bandwidths(tps * ps, tpi * ps, tp * ps, gamma);
          return std::pair{b.sigma_s / rad_per_ps, b.sigma_i / rad_per_ps};
        },
        py::arg("tau_ps"), py::arg("tau_pi"), py::arg("tau_p"), py::arg("gamma") = 0.193,
        "(sigma_s, sigma_i) in rad/ps");
  m.def("ellipse",
        [](double tps, double tpi, double tp, double gamma) {
          const EllipseGeometry e = ellipse_geometry(gauss_coeffs(tps * ps, tpi * ps, tp * ps, gamma));
          return py::make_tuple(e.theta, e.semi_axes[0] / rad_per_ps, e.semi_axes[1] / rad_per_ps);
        },
        py::arg("tau_ps"), py::arg("tau_pi"), py::arg("tau_p"), py::arg("gamma") = 0.193,
        "(theta_rad, major, minor) of the Gaussian intensity ellipse");

  py::class_<JsaGrid>(m, "JsaGrid")
      .def(py::init(&grid_from_array), py::arg("values"), py::arg("half_extent_s"), py::arg("half_extent_i"),
           "Grid on symmetric axes [-half, half] in rad/ps; rows follow the signal.")
      .def_property_readonly("values", [](const JsaGrid& g) { return g.values; })
      .def_property_readonly("omega_s", [](const JsaGrid& g) { return scaled(g.axis_s.values(), rad_per_ps); })
      .def_property_readonly("omega_i", [](const JsaGrid& g) { return scaled(g.axis_i.values(), rad_per_ps); })
      .def_property_readonly("model", [](const JsaGrid& g) { return to_string(g.model); })
      .def("schmidt_svd",
           [](const JsaGrid& g) {
             const SvdSchmidt s = schmidt_svd(g);
             return py::make_tuple(s.k, s.weights);
           })
      .def("schmidt_integral",
           [](const JsaGrid& g, const std::string& which) {
             return schmidt_integral(g, which == "idler" ? Subsystem::idler : Subsystem::signal);
           },
           py::arg("subsystem") = "signal")
      .def("marginal",
           [](const JsaGrid& g, const std::string& which) {
             const SpectrumCurve c = marginal_spectrum(g, which == "idler" ? Subsystem::idler : Subsystem::signal);
             return py::make_tuple(scaled(c.axis, rad_per_ps), c.values, c.fwhm / rad_per_ps);
           },
           py::arg("subsystem") = "signal", "(omega, normalized S, fwhm) in rad/ps");

  m.def("jsa",
        [](const io::Scenario& s, double tp, const std::string& model, int points, double extent) {
          const PhaseMatchSolution sol = solve_central_frequencies(s.config);
          const PumpPulse pulse{tp * ps};
          const GridAxes axes = default_axes(sol.tau_ps, sol.tau_pi, pulse.duration, s.config.gamma,
                                             GridSpec{points, extent});
          if (parse_sweep_model(model) == SweepModel::gauss)
            return jsa_gauss(gauss_coeffs(sol.tau_ps, sol.tau_pi, pulse.duration, s.config.gamma), pulse, axes);
          return jsa_exact(s.config, sol, pulse, axes);
        },
        py::arg("scenario"), py::arg("tau_p"), py::arg("model") = "exact", py::arg("points") = 256,
        py::arg("extent_sigmas") = 5.0, py::call_guard<py::gil_scoped_release>());

  m.def("sweep",
        [](const io::Scenario& s, std::vector<double> taus, const std::string& model, int points) {
          const PhaseMatchSolution sol = solve_central_frequencies(s.config);
          for (double& t : taus) t *= ps;
          std::vector<double> k;
          for (const SweepPoint& p : sweep_pump_duration(s.config, sol, taus, parse_sweep_model(model),
                                                         GridSpec{points, 5.0}))
            k.push_back(p.k);
          return k;
        },
        py::arg("scenario"), py::arg("tau_p"), py::arg("model") = "gauss", py::arg("points") = 256,
        py::call_guard<py::gil_scoped_release>(), "K at each pump duration; NaN where a point failed");
}
