#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jms/cli.hpp"
#include "jms/error.hpp"
#include "jms/spectra.hpp"

namespace py = pybind11;
using namespace jms;

namespace {

std::vector<cplx> to_vector(std::span<const cplx> s) { return {s.begin(), s.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Laguerre-basis J-matrix scattering without a potential";

  auto base = py::register_exception<Error>(m, "JmsError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
  py::register_exception<SingularityError>(m, "SingularityError", base.ptr());

  m.attr("DEFAULT_ETA") = kDefaultEta;

  py::class_<Channel>(m, "Channel")
      .def(py::init([](int ell, double lambda, double eta) {
             Channel ch{ell, lambda, eta};
             ch.validate();
             return ch;
           }),
           py::arg("ell"), py::arg("lambda_") = 1.0, py::arg("eta") = kDefaultEta)
      .def_readonly("ell", &Channel::ell)
      .def_readonly("lambda_", &Channel::lambda)
      .def_readonly("eta", &Channel::eta)
      .def("energy_over_lambda2", &Channel::energy_over_lambda2)
      .def("spectral_x", &Channel::spectral_x);

  py::class_<InteractionMatrix>(m, "InteractionMatrix")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("diag"), py::arg("off") = std::vector<double>{})
      .def_property_readonly("rank", &InteractionMatrix::rank)
      .def_property_readonly("diag", [](const InteractionMatrix& o) {
        return std::vector<double>(o.diagonal().begin(), o.diagonal().end());
      })
      .def_property_readonly("off", [](const InteractionMatrix& o) {
        return std::vector<double>(o.offdiagonal().begin(), o.offdiagonal().end());
      })
      .def("padded", &InteractionMatrix::padded);

  py::class_<KinematicTable>(m, "KinematicTable")
      .def(py::init([](const Channel& ch, double x, int n_max) { return KinematicTable(ch, SpectralPoint::at(x), n_max); }),
           py::arg("channel"), py::arg("x"), py::arg("n_max") = KinematicTable::kDefaultNMax)
      .def_property_readonly("s", [](const KinematicTable& t) { return to_vector(t.s()); })
      .def_property_readonly("c", [](const KinematicTable& t) { return to_vector(t.c()); })
      .def_property_readonly("p_plus", [](const KinematicTable& t) { return to_vector(t.p_plus()); })
      .def_property_readonly("p_minus", [](const KinematicTable& t) { return to_vector(t.p_minus()); })
      .def("j_diag", &KinematicTable::j_diag)
      .def("j_up", &KinematicTable::j_up);

  py::class_<ScatteringResult>(m, "ScatteringResult")
      .def_readonly("s_value", &ScatteringResult::s_value)
      .def_readonly("delta", &ScatteringResult::delta)
      .def_readonly("interior_rho", &ScatteringResult::interior_rho)
      .def_readonly("interior_sigma", &ScatteringResult::interior_sigma);

  m.def(
      "s_matrix",
      [](const Channel& ch, const InteractionMatrix& omega, double x, const std::string& method) {
        const KinematicTable t(ch, SpectralPoint::at(x), std::max(omega.rank(), 2) + 1);
        if (method == "closed") return s_closed_form(t, omega);
        if (method == "linear") return s_linear_solve(t, omega);
        throw DomainError("s_matrix: method must be 'linear' or 'closed'");
      },
      py::arg("channel"), py::arg("omega"), py::arg("x"), py::arg("method") = "linear");

  m.def(
      "phase_shift_curve",
      [](const Channel& ch, const InteractionMatrix& omega, const std::vector<double>& xs) {
        const auto curve = phase_shift_curve(ch, omega, xs);
        std::vector<double> deltas;
        for (const auto& p : curve.points) deltas.push_back(p.delta);
        return py::make_tuple(deltas, curve.warnings);
      },
      py::arg("channel"), py::arg("omega"), py::arg("x_grid"));

  py::class_<BoundState>(m, "BoundState")
      .def_readonly("x_star", &BoundState::x_star)
      .def_readonly("energy_over_lambda2", &BoundState::energy_over_lambda2)
      .def_readonly("residual", &BoundState::residual);

  py::class_<ResonancePeak>(m, "ResonancePeak")
      .def_readonly("x_star", &ResonancePeak::x_star)
      .def_readonly("energy_over_lambda2", &ResonancePeak::energy_over_lambda2)
      .def_readonly("height", &ResonancePeak::height)
      .def_readonly("half_width", &ResonancePeak::half_width)
      .def_readonly("phase_slope", &ResonancePeak::phase_slope)
      .def_property_readonly("resonant", &ResonancePeak::resonant);

  py::class_<CensusRow>(m, "CensusRow")
      .def_readonly("rank", &CensusRow::rank)
      .def_readonly("samples", &CensusRow::samples)
      .def_readonly("max_count", &CensusRow::max_count)
      .def_readonly("violations", &CensusRow::violations);

  m.def("pole_determinant", &pole_determinant, py::arg("channel"), py::arg("omega"), py::arg("x"));
  m.def(
      "find_bound_states",
      [](const Channel& ch, const InteractionMatrix& omega, double x_min, int grid_points) {
        return find_bound_states(ch, omega, x_min, grid_points).states;
      },
      py::arg("channel"), py::arg("omega"), py::arg("x_min") = SearchDefaults::x_min,
      py::arg("grid_points") = SearchDefaults::grid_points);
  m.def(
      "find_resonances",
      [](const Channel& ch, const InteractionMatrix& omega, double x_max, int grid_points) {
        return find_resonances(ch, omega, x_max, grid_points).peaks;
      },
      py::arg("channel"), py::arg("omega"), py::arg("x_max") = SearchDefaults::x_max,
      py::arg("grid_points") = SearchDefaults::grid_points);
  m.def("random_interactions", &random_interactions, py::arg("rank"), py::arg("count"), py::arg("seed"),
        py::arg("bound") = 10.0);
  m.def(
      "conjecture_census",
      [](const Channel& ch, const std::vector<InteractionMatrix>& samples, double x_min, int grid_points) {
        return conjecture_census(ch, samples, x_min, grid_points);
      },
      py::arg("channel"), py::arg("samples"), py::arg("x_min") = SearchDefaults::x_min,
      py::arg("grid_points") = SearchDefaults::grid_points);

  m.def("format_double", &cli::format_double);
}
