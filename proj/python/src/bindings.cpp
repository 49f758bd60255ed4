#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ndpo/analytic.hpp"
#include "ndpo/cli/commands.hpp"
#include "ndpo/error.hpp"
#include "ndpo/fringe.hpp"
#include "ndpo/langevin.hpp"
#include "ndpo/moments.hpp"
#include "ndpo/opa.hpp"
#include "ndpo/oracle.hpp"
#include "ndpo/params.hpp"
#include "ndpo/version.hpp"

namespace py = pybind11;
using namespace ndpo;

namespace {

cli::Method parse_method(const std::string& name) {
  if (name == "analytic") return cli::Method::Analytic;
  if (name == "moments") return cli::Method::Moments;
  if (name == "quadrature") return cli::Method::Quadrature;
  if (name == "auto") return cli::Method::Auto;
  throw py::value_error("method must be analytic, moments, quadrature or auto");
}

std::string method_name(cli::Method m) {
  switch (m) {
    case cli::Method::Analytic: return "analytic";
    case cli::Method::Moments: return "moments";
    case cli::Method::Quadrature: return "quadrature";
    case cli::Method::MonteCarlo: return "montecarlo";
    case cli::Method::Auto: return "auto";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_ndpo, m) {
  m.doc() = "Multi-photon absorption fringes from a degenerate parametric oscillator";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<StatisticsError>(m, "StatisticsError", PyExc_RuntimeError);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("n0", &DerivedParams::n0)
      .def_readonly("r", &DerivedParams::r)
      .def_readonly("sigma", &DerivedParams::sigma)
      .def_readonly("a1", &DerivedParams::a1)
      .def_readonly("a2", &DerivedParams::a2)
      .def("__repr__", [](const DerivedParams& d) {
        return "DerivedParams(n0=" + std::to_string(d.n0) + ", r=" + std::to_string(d.r) + ")";
      });

  m.def("derive", [](double gamma, double gamma3, double kappa, double epsilon) {
    return derive(NdpoParams{gamma, gamma3, kappa, epsilon});
  }, py::arg("gamma"), py::arg("gamma3"), py::arg("kappa"), py::arg("epsilon"));
  m.def("derive_scaled", &derive_scaled, py::arg("n0"), py::arg("r"));
  m.def("regime", [](const DerivedParams& d, double band) {
    return std::string(to_string(classify(d, band).tag));
  }, py::arg("derived"), py::arg("band") = kDefaultBand);

  m.def("rate_below", &rate_below, py::arg("p"), py::arg("r"), py::arg("phi"));
  m.def("rate_above_asymptotic", [](int p, const DerivedParams& d, double phi) {
    return rate_above_asymptotic(p, d, phi);
  }, py::arg("p"), py::arg("derived"), py::arg("phi"));
  m.def("rate_general", [](int p, const DerivedParams& d, double phi, double band) {
    return rate_general(p, d, phi, classify(d, band));
  }, py::arg("p"), py::arg("derived"), py::arg("phi"), py::arg("band") = kDefaultBand);
  m.def("rate_quadrature", [](int p, const DerivedParams& d, double phi) { return rate_quadrature(p, d, phi); }, py::arg("p"), py::arg("derived"), py::arg("phi"));
  m.def("table1_rate", &table1_rate, py::arg("p"), py::arg("r"), py::arg("phi"));
  m.def("table2_visibility", &table2_visibility, py::arg("p"), py::arg("r"));
  m.def("radial_R", &radial_R, py::arg("S"), py::arg("a1"));
  m.def("coupled_moment", py::overload_cast<int, int, double>(&coupled_moment),
        py::arg("s"), py::arg("t"), py::arg("a1"));
  m.def("r_from_gain", &r_from_gain, py::arg("G"));
  m.def("opa_visibility", &opa_visibility, py::arg("p"), py::arg("G"));

  m.def("fringe", [](int p, const DerivedParams& d, const std::string& method, std::size_t points,
                     double band) {
    const auto result = cli::compute_fringe(p, d, parse_method(method), band, phase_grid(points));
    py::dict out;
    out["phi"] = result.pattern.phi_grid;
    out["rate"] = result.pattern.rates;
    out["normalized"] = result.pattern.normalized;
    out["visibility"] = result.pattern.visibility;
    out["regime"] = std::string(to_string(result.regime.tag));
    out["method"] = method_name(result.method_used);
    return out;
  }, py::arg("p"), py::arg("derived"), py::arg("method") = "auto",
     py::arg("points") = kDefaultPhasePoints, py::arg("band") = kDefaultBand);

  m.def("simulate_rate", [](int p, const DerivedParams& d, std::vector<double> phis, int trajectories,
                            int samples, std::uint64_t seed, double dt) {
    SimConfig sim;
    sim.n_trajectories = trajectories;
    sim.samples_per_trajectory = samples;
    sim.seed = seed;
    sim.dt = dt;
    SampleSet set;
    {
      py::gil_scoped_release release;
      set = simulate_steady_state(d, sim);
    }
    py::list rows;
    for (double phi : phis) {
      const auto e = estimate_rate(p, phi, set);
      py::dict row;
      row["phi"] = phi;
      row["mean"] = e.mean;
      row["std_error"] = e.std_error;
      row["imag_mean"] = e.imag_mean;
      row["n_samples"] = e.n_samples;
      rows.append(row);
    }
    return rows;
  }, py::arg("p"), py::arg("derived"), py::arg("phis"), py::arg("trajectories") = 1000,
     py::arg("samples") = 10, py::arg("seed") = 0, py::arg("dt") = 1e-3);
}
