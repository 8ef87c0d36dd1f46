#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lslab/biharmonic.hpp"
#include "lslab/conjugated.hpp"
#include "lslab/control.hpp"
#include "lslab/ls_checker.hpp"
#include "lslab/spectral.hpp"

namespace py = pybind11;
using namespace lslab;

PYBIND11_MODULE(_lslab, m) {
  m.doc() = "Boundary determinant conditions, discrete fourth-order spectra, "
            "and Lebeau-Robbiano null control";

  py::class_<TangentialFrequency>(m, "TangentialFrequency")
      .def(py::init([](double sigma, double r) { return TangentialFrequency::scalar(sigma, r); }),
           py::arg("sigma"), py::arg("r"))
      .def_static("scalar", &TangentialFrequency::scalar)
      .def_readwrite("sigma", &TangentialFrequency::sigma)
      .def_readwrite("xi_prime", &TangentialFrequency::xi_prime)
      .def("r", &TangentialFrequency::r)
      .def("lam", &TangentialFrequency::lambda);

  py::class_<AugmentedRootPair>(m, "AugmentedRootPair")
      .def_readonly("rho1", &AugmentedRootPair::rho1)
      .def_readonly("rho2", &AugmentedRootPair::rho2)
      .def_readonly("lambda_cap", &AugmentedRootPair::lambda_cap);
  m.def("augmented_roots", &augmented_roots);

  py::class_<BoundarySymbol>(m, "BoundarySymbol")
      .def_readonly("order", &BoundarySymbol::order)
      .def_readonly("dim", &BoundarySymbol::dim)
      .def("__str__", &serialize_symbol);
  m.def("parse_symbol", &parse_symbol);
  m.def("serialize_symbol", &serialize_symbol);
  m.def("hinged_pair", [] { return std::make_pair(pairs::hinged_b1(), pairs::hinged_b2()); });
  m.def("clamped_pair", [] { return std::make_pair(pairs::clamped_b1(), pairs::clamped_b2()); });
  m.def("neumann_pair", [] { return std::make_pair(pairs::neumann_b1(), pairs::neumann_b2()); });
  m.def("shear_pair", [] { return std::make_pair(pairs::shear_b1(), pairs::shear_b2()); });
  m.def("observation_pair", [](double alpha) {
    return std::make_pair(pairs::observation_b1(alpha), pairs::observation_b2());
  });

  m.def("ls_det_p", &ls_det_P);
  m.def("ls_det_q", &ls_det_Q);

  py::enum_<LSMode>(m, "LSMode")
      .value("StaticP", LSMode::StaticP)
      .value("AugmentedQ", LSMode::AugmentedQ);
  py::class_<LSReport>(m, "LSReport")
      .def_readonly("certified", &LSReport::certified)
      .def_readonly("min_normalized_det", &LSReport::min_normalized_det)
      .def_readonly("samples", &LSReport::samples)
      .def_readonly("threshold", &LSReport::threshold)
      .def_property_readonly("argmin",
                             [](const LSReport& r) {
                               return std::make_pair(r.argmin_point.sigma, r.argmin_point.r());
                             });
  m.def("certify_sphere", &certify_sphere, py::arg("b1"), py::arg("b2"), py::arg("mode"),
        py::arg("n"), py::arg("threshold") = 1e-6);
  m.def("sigma_limit_consistency", &sigma_limit_consistency);
  m.def("expand_k", &expand_K);
  m.def("expand_k_prime", &expand_Kprime);

  py::class_<ConjugationPoint>(m, "ConjugationPoint")
      .def(py::init([](double tau, double phi_s, double phi_xp, double phi_d) {
             return ConjugationPoint{tau, phi_s, {phi_xp}, phi_d};
           }),
           py::arg("tau"), py::arg("phi_s"), py::arg("phi_xp"), py::arg("phi_d"))
      .def("mu0", &ConjugationPoint::mu0);
  py::enum_<CaseKind>(m, "CaseKind")
      .value("Case1", CaseKind::Case1)
      .value("Case2", CaseKind::Case2)
      .value("Case3", CaseKind::Case3)
      .value("Case4", CaseKind::Case4);
  py::class_<RootConfiguration>(m, "RootConfiguration")
      .def_readonly("kind", &RootConfiguration::kind)
      .def_readonly("upper_count", &RootConfiguration::upper_count)
      .def_readonly("near_double", &RootConfiguration::near_double)
      .def_readonly("upper_roots", &RootConfiguration::upper_roots);
  m.def("gamma_j", &gamma_j);
  m.def("classify_configuration", &classify_configuration);
  m.def("ls_conjugated_det", &ls_conjugated_det);

  py::class_<Grid1D>(m, "Grid1D")
      .def(py::init<int, double>(), py::arg("n"), py::arg("length"))
      .def_readonly("n", &Grid1D::n)
      .def_readonly("length", &Grid1D::length)
      .def("h", &Grid1D::h);
  py::enum_<BcKind>(m, "BcKind")
      .value("Clamped", BcKind::Clamped)
      .value("Hinged", BcKind::Hinged)
      .value("Free", BcKind::Free)
      .value("NeumannPair", BcKind::NeumannPair);
  py::class_<BcPair>(m, "BcPair")
      .def(py::init([](BcKind l, BcKind r) { return BcPair{l, r}; }), py::arg("left"),
           py::arg("right"));
  py::class_<EigenDecomposition>(m, "EigenDecomposition")
      .def_readonly("mu", &EigenDecomposition::mu)
      .def_readonly("phi", &EigenDecomposition::phi)
      .def_readonly("shift", &EigenDecomposition::shift)
      .def_readonly("h", &EigenDecomposition::h);
  m.def("assemble", &assemble);
  m.def("check_nonnegativity", &check_nonnegativity);
  m.def("eigendecompose", &eigendecompose);

  py::class_<ObservationWindow>(m, "ObservationWindow")
      .def_static("all", &ObservationWindow::all)
      .def_static("interval", &ObservationWindow::interval)
      .def_static("left_fraction", &ObservationWindow::left_fraction)
      .def_readonly("mask", &ObservationWindow::mask);
  py::class_<ObservabilityPoint>(m, "ObservabilityPoint")
      .def_readonly("mu", &ObservabilityPoint::mu)
      .def_readonly("dim", &ObservabilityPoint::dim)
      .def_readonly("K", &ObservabilityPoint::K)
      .def_readonly("singular", &ObservabilityPoint::singular);
  m.def("observability_constant", &observability_constant);
  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("slope", &ScalingFit::slope)
      .def_readonly("intercept", &ScalingFit::intercept)
      .def_readonly("max_residual", &ScalingFit::max_residual);
  m.def("fit_scaling", &fit_scaling);
  m.def("f_kernel", [](double s) {
    const FKernel k = f_kernel(s);
    return std::make_tuple(k.f, k.df, k.d2f, k.d3f);
  });
  m.def("h_integral", &h_integral);

  py::class_<LRScheduleParams>(m, "LRScheduleParams")
      .def(py::init<>())
      .def_readwrite("base", &LRScheduleParams::base)
      .def_readwrite("max_stages", &LRScheduleParams::max_stages)
      .def_readwrite("control_fraction", &LRScheduleParams::control_fraction)
      .def_readwrite("steps_per_stage", &LRScheduleParams::steps_per_stage)
      .def_readwrite("gram_floor", &LRScheduleParams::gram_floor)
      .def_readwrite("tail_fraction", &LRScheduleParams::tail_fraction);
  py::class_<StageRecord>(m, "StageRecord")
      .def_readonly("cutoff", &StageRecord::cutoff)
      .def_readonly("stage_cost", &StageRecord::stage_cost)
      .def_readonly("post_stage_norm", &StageRecord::post_stage_norm)
      .def_readonly("post_low_norm", &StageRecord::post_low_norm);
  py::class_<ControlResult>(m, "ControlResult")
      .def_readonly("final_norm", &ControlResult::final_norm)
      .def_readonly("cost", &ControlResult::cost)
      .def_readonly("per_stage", &ControlResult::per_stage)
      .def_readonly("trajectory_samples", &ControlResult::trajectory_samples);
  py::class_<StoredControl>(m, "StoredControl")
      .def_readonly("t_start", &StoredControl::t_start)
      .def_readonly("duration", &StoredControl::duration)
      .def_readonly("w", &StoredControl::w);
  m.def("simulate_free", &simulate_free);
  m.def("run_lr",
        [](const EigenDecomposition& eig, const ObservationWindow& omega,
           const Eigen::VectorXd& y0, double T, const LRScheduleParams& params) {
          ControlResult res = run_lr(eig, omega, y0, T, params);
          const double resim = verify_by_resimulation(eig, omega, res.controls, y0, T, 10);
          return std::make_pair(std::move(res), resim);
        },
        py::arg("eig"), py::arg("omega"), py::arg("y0"), py::arg("T"),
        py::arg("params") = LRScheduleParams{});
}
