#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gatom/collective.hpp"
#include "gatom/config.hpp"
#include "gatom/dynamics.hpp"
#include "gatom/effective.hpp"
#include "gatom/hilbert.hpp"
#include "gatom/scenarios.hpp"

namespace py = pybind11;
using namespace gatom;

namespace {

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict d;
  d["t_ns"] = traj.times();
  for (const auto& name : traj.channel_names()) {
    const auto values = traj.channel(name);
    bool complex = false;
    for (const auto& v : values) complex = complex || v.imag() != 0.0;
    if (complex) {
      d[name.c_str()] = std::vector<Complex>(values.begin(), values.end());
    } else {
      d[name.c_str()] = traj.real(name);
    }
  }
  d["norm_err"] = traj.norm_errors();
  return d;
}

py::dict summary_dict(const scenarios::TraceSummary& s) {
  py::dict d;
  d["tau_e_ns"] = s.tau_e ? py::object(py::float_(*s.tau_e)) : py::object(py::none());
  d["pe_max"] = s.pe_max;
  d["n_r1_mean"] = s.n_r1_mean;
  d["n_r2_mean"] = s.n_r2_mean;
  d["norm_err_max"] = s.norm_err_max;
  d["pe_exact_eff_max_abs_diff"] = s.pe_diff_max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gatom, m) {
  m.doc() = "Giant-atom interference simulator";

  py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IntegrationDiverged>(m, "IntegrationDiverged", PyExc_RuntimeError);

  m.def("annihilation", &annihilation, py::arg("levels"));
  m.def("coherent_state", &coherent_state, py::arg("amp"), py::arg("levels"));
  m.def("expectation", &expectation, py::arg("psi"), py::arg("op"));

  m.def("geometric_phase", &collective::geometric_phase, py::arg("r"), py::arg("theta"), py::arg("lam"));
  m.def("collective_mode", &collective::collective_mode, py::arg("phase_a"), py::arg("phase_b"),
        py::arg("levels"));
  m.def(
      "ncol_expected_analytic",
      [](Complex alpha, Complex beta, double phase_diff) {
        return collective::ncol_expected_analytic({alpha, beta}, phase_diff);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("phase_diff"));
  m.def(
      "resultant_amplitude",
      [](Complex alpha, Complex beta, double path_difference, double lam) {
        collective::ModeGeometry g;
        g.r_b = path_difference;
        g.lambda = lam;
        return collective::resultant_amplitude({alpha, beta}, g);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("path_difference"), py::arg("lam") = 1.0,
      "|E_res| for modes whose path lengths differ by path_difference.");

  m.def(
      "estimate_inversion_time",
      [](const std::vector<double>& t, const std::vector<double>& v, double threshold) {
        return estimate_inversion_time(t, v, threshold);
      },
      py::arg("times"), py::arg("values"), py::arg("threshold") = 0.5);

  py::class_<config::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init(&config::defaults))
      .def_static("parse", &config::parse, py::arg("text"))
      .def_static("load", &config::load, py::arg("path"))
      .def(
          "set",
          [](config::ScenarioConfig& c, const std::string& key, const std::string& value) {
            config::set(c, key, value);
            config::validate(c);
          },
          py::arg("key"), py::arg("value"))
      .def_property_readonly("scenario",
                             [](const config::ScenarioConfig& c) { return std::string(config::to_string(c.scenario)); })
      .def_property_readonly("frame",
                             [](const config::ScenarioConfig& c) { return std::string(config::to_string(c.frame)); })
      .def_readonly("t_end", &config::ScenarioConfig::t_end)
      .def_readonly("output_dir", &config::ScenarioConfig::output_dir);
  m.def("known_keys", [] {
    std::vector<std::string> out;
    for (auto k : config::known_keys()) out.emplace_back(k);
    return out;
  });

  m.def(
      "run",
      [](const config::ScenarioConfig& cfg) {
        scenarios::RunOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = scenarios::run(cfg);
        }
        py::dict files;
        for (const auto& f : outcome.files) files[f.name.c_str()] = f.content;
        return py::make_tuple(files, outcome.ok);
      },
      py::arg("config"), "Runs the configured scenario; returns ({file name: content}, ok).");
  m.def("write_files", [](const std::filesystem::path& dir, const py::dict& files) {
    std::vector<scenarios::OutputFile> out;
    for (const auto& [name, content] : files) out.push_back({py::str(name), py::str(content)});
    scenarios::write_files(dir, out);
  });

  m.def(
      "run_fig1c",
      [](const config::ScenarioConfig& cfg) {
        scenarios::Fig1cResult r;
        {
          py::gil_scoped_release release;
          r = scenarios::run_fig1c(cfg);
        }
        py::dict out;
        for (const auto& c : r.cases) {
          py::dict d;
          d["delta_phi"] = c.delta_phi;
          d["summary"] = summary_dict(c.summary);
          d["exact"] = trajectory_dict(c.exact);
          d["effective"] = trajectory_dict(c.effective);
          out[c.label.c_str()] = d;
        }
        return out;
      },
      py::arg("config"));

  m.def(
      "simulate_two_mode",
      [](Complex alpha, Complex beta, double path_difference, double g, double omega, double omega0,
         std::size_t levels, double t_end, double dt) {
        collective::ModeGeometry geom;
        geom.r_b = path_difference;
        const collective::TwoModeModel model{g, omega, omega0, levels};
        Trajectory traj;
        {
          py::gil_scoped_release release;
          traj = collective::simulate_two_mode_quantum({alpha, beta}, geom, model,
                                                       TimeGrid::with_min_samples(t_end, dt, 200));
        }
        return trajectory_dict(traj);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("path_difference") = 0.0, py::arg("g"), py::arg("omega"),
      py::arg("omega0"), py::arg("levels") = 10, py::arg("t_end") = 60.0, py::arg("dt") = 0.01,
      "Full quantum two-mode dynamics; frequencies in rad/ns, path difference in wavelengths.");
}
