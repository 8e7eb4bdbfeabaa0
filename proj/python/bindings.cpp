#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wormhole/cli.hpp"
#include "wormhole/errors.hpp"
#include "wormhole/fock.hpp"
#include "wormhole/gaussian.hpp"
#include "wormhole/metrology.hpp"
#include "wormhole/sensitivity.hpp"
#include "wormhole/spacetime.hpp"

namespace py = pybind11;
using namespace wormhole;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian-state metrology and Ellis-wormhole sensitivity formulas";

  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<NoSignalError>(m, "NoSignalError", PyExc_ArithmeticError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

  // gaussian-core
  py::class_<GaussianState>(m, "GaussianState")
      .def(py::init<Vec2, Mat2>(), py::arg("mean"), py::arg("cov"))
      .def_static("vacuum", &GaussianState::vacuum)
      .def_property_readonly("mean", &GaussianState::mean)
      .def_property_readonly("cov", &GaussianState::cov)
      .def("det", &GaussianState::det)
      .def("is_pure", &GaussianState::is_pure, py::arg("tol") = 1e-9);

  py::class_<ProbeSpec>(m, "ProbeSpec")
      .def(py::init([](double alpha, double r, double n_T, double eta) {
             ProbeSpec s{alpha, r, n_T, eta};
             s.validate();
             return s;
           }),
           py::arg("alpha") = 0.0, py::arg("r") = 0.0, py::arg("n_T") = 0.0, py::arg("eta") = 1.0)
      .def_readwrite("alpha", &ProbeSpec::alpha)
      .def_readwrite("r", &ProbeSpec::r)
      .def_readwrite("n_T", &ProbeSpec::n_T)
      .def_readwrite("eta", &ProbeSpec::eta);

  py::class_<HomodyneDensity>(m, "HomodyneDensity")
      .def_readonly("mu", &HomodyneDensity::mu)
      .def_readonly("sigma2", &HomodyneDensity::sigma2)
      .def("pdf", &HomodyneDensity::pdf);

  m.def("coherent_state", &coherent_state, py::arg("alpha"));
  m.def("displaced_squeezed_thermal", &displaced_squeezed_thermal, py::arg("spec"));
  m.def("apply_phase_shift", &apply_phase_shift, py::arg("state"), py::arg("theta"));
  m.def("apply_loss", &apply_loss, py::arg("state"), py::arg("eta"));
  m.def("prepare_probe", &prepare_probe, py::arg("spec"), py::arg("theta"));
  m.def("mean_photon_number", &mean_photon_number);
  m.def("photon_number_variance", &photon_number_variance);
  m.def("homodyne_p_density", &homodyne_p_density);
  m.def("sample_homodyne", &sample_homodyne, py::arg("state"), py::arg("count"), py::arg("seed"));

  // fock oracle
  m.def(
      "fock_moments",
      [](double alpha, double r, int dim) {
        const auto mom = fock::fock_moments(fock::build_displaced_squeezed(alpha, r, dim));
        return py::make_tuple(mom.mean_n, mom.var_n);
      },
      py::arg("alpha"), py::arg("r"), py::arg("dim") = 256);

  // metrology
  py::class_<EstimationReport>(m, "EstimationReport")
      .def_readonly("theta_true", &EstimationReport::theta_true)
      .def_readonly("trials", &EstimationReport::trials)
      .def_readonly("samples_per_trial", &EstimationReport::samples_per_trial)
      .def_readonly("estimator_mean", &EstimationReport::estimator_mean)
      .def_readonly("estimator_variance", &EstimationReport::estimator_variance)
      .def_readonly("crb", &EstimationReport::crb)
      .def_readonly("ratio", &EstimationReport::ratio)
      .def_readonly("clamp_count", &EstimationReport::clamp_count);

  m.def("qfi_pure_gaussian", &qfi_pure_gaussian, py::arg("alpha"), py::arg("r"));
  m.def("qfi_coherent", &qfi_coherent, py::arg("n_mean"));
  m.def("fi_homodyne", &fi_homodyne, py::arg("alpha"), py::arg("theta"));
  m.def("cramer_rao", &cramer_rao, py::arg("fisher"), py::arg("repetitions") = 1);
  m.def("fi_numerical", &fi_numerical, py::arg("probe"), py::arg("theta"), py::arg("dtheta") = 1e-4);
  m.def("reparametrize_fisher", &reparametrize_fisher);
  m.def("mc_estimation_experiment", &mc_estimation_experiment, py::arg("probe"), py::arg("theta_true"),
        py::arg("samples_per_trial"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  // spacetime
  py::class_<WormholeScenario>(m, "WormholeScenario")
      .def(py::init([](double b0, double r1, double L, double lambda) {
             WormholeScenario s{b0, r1, L, lambda};
             s.validate();
             return s;
           }),
           py::arg("b0"), py::arg("r1"), py::arg("L"), py::arg("wavelength"))
      .def_readwrite("b0", &WormholeScenario::b0)
      .def_readwrite("r1", &WormholeScenario::r1)
      .def_readwrite("L", &WormholeScenario::L)
      .def_readwrite("wavelength", &WormholeScenario::lambda);

  py::class_<RegimeReport>(m, "RegimeReport")
      .def_readonly("ok", &RegimeReport::ok)
      .def_readonly("b0_over_r1", &RegimeReport::b0_over_r1)
      .def_readonly("L_over_r1", &RegimeReport::L_over_r1)
      .def_readonly("lambda_over_L", &RegimeReport::lambda_over_L)
      .def_readonly("violations", &RegimeReport::violations)
      .def_readonly("worst_name", &RegimeReport::worst_name)
      .def("describe", &RegimeReport::describe);

  py::class_<WormholePhase>(m, "WormholePhase")
      .def_readonly("theta_f", &WormholePhase::theta_f)
      .def_readonly("delta", &WormholePhase::delta)
      .def_readonly("theta", &WormholePhase::theta);

  m.def("regime_check", [](const WormholeScenario& s) { return regime_check(s); });
  m.def("proper_radial_coordinate", &proper_radial_coordinate, py::arg("r"), py::arg("b0"));
  m.def("proper_distance", &proper_distance);
  m.def(
      "wormhole_phase",
      [](const WormholeScenario& s, bool override_regime) {
        return wormhole_phase(s, PhaseOptions{override_regime, {}});
      },
      py::arg("scenario"), py::arg("override_regime") = false);
  m.def("dtheta_db0", [](const WormholeScenario& s) { return dtheta_db0(s); });
  m.def("metric_perturbation", [](double r1, double b0) { return metric_perturbation(r1, b0).g_rr; });
  m.def("detectable_throat_scale", &detectable_throat_scale, py::arg("delta_theta"), py::arg("L"),
        py::arg("wavelength"));

  // sensitivity
  auto make_input = [](const WormholeScenario& s, double n_photons, double eta, double n_T,
                       const std::string& noise_model, const std::string& information) {
    SensitivityInput in;
    in.scenario = s;
    in.n_photons = n_photons;
    in.eta = eta;
    in.n_T = n_T;
    in.noise_model = parse_noise_model(noise_model);
    in.information = parse_information(information);
    return in;
  };
  m.def(
      "relative_sensitivity",
      [make_input](const WormholeScenario& s, double n, double eta, double n_T, const std::string& nm,
                   const std::string& info) { return relative_sensitivity(make_input(s, n, eta, n_T, nm, info)); },
      py::arg("scenario"), py::arg("n_photons"), py::arg("eta") = 1.0, py::arg("n_T") = 0.0,
      py::arg("noise_model") = "as-printed", py::arg("information") = "qfi");
  m.def(
      "sensitivity_via_chain_rule",
      [make_input](const WormholeScenario& s, double n) {
        return sensitivity_via_chain_rule(make_input(s, n, 1.0, 0.0, "as-printed", "qfi"));
      },
      py::arg("scenario"), py::arg("n_photons"));
  m.def(
      "max_distance_ratio",
      [make_input](const WormholeScenario& s, double n, double tolerance) {
        const auto r = max_distance_ratio(make_input(s, n, 1.0, 0.0, "as-printed", "qfi"), tolerance);
        return py::make_tuple(r.ratio, r.b0_min);
      },
      py::arg("scenario"), py::arg("n_photons"), py::arg("tolerance"));
  m.def("mimicker_distance", &mimicker_distance, py::arg("b0"), py::arg("delta_theta_min"), py::arg("L"),
        py::arg("wavelength"));

  // cli
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "wormhole-metrology");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
  m.attr("__version__") = std::string(cli::kVersion);
}
