#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arhyst/closed_forms.hpp"
#include "arhyst/errors.hpp"
#include "arhyst/gaussian.hpp"
#include "arhyst/optimizer.hpp"
#include "arhyst/process.hpp"
#include "arhyst/quadrature.hpp"
#include "arhyst/survival_solver.hpp"

namespace py = pybind11;
using namespace arhyst;

PYBIND11_MODULE(arhyst, m) {
    m.doc() = "Hysteresis-rule portfolio model: simulation, closed forms, survival-time solver";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ValueError);
    py::register_exception<UnsupportedRegionError>(m, "UnsupportedRegionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def("gauss_pdf", &gauss_pdf, py::arg("x"));
    m.def("gauss_cdf", &gauss_cdf, py::arg("x"));
    m.def("gauss_inv_cdf", &gauss_inv_cdf, py::arg("p"));

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"), py::arg("stream_id"))
        .def("next_uniform", &RngStream::next_uniform)
        .def("child", &RngStream::child, py::arg("k"));

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double>(), py::arg("rho"), py::arg("alpha"), py::arg("eta"))
        .def_readwrite("rho", &ModelParams::rho)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("eta", &ModelParams::eta)
        .def("validate", &ModelParams::validate);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("n", &McEstimate::n)
        .def("__repr__", [](const McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", std_error=" + std::to_string(e.std_error) + ", n=" + std::to_string(e.n) +
                   ")";
        });

    py::class_<GradPair>(m, "GradPair")
        .def_readonly("d_alpha", &GradPair::d_alpha)
        .def_readonly("d_eta", &GradPair::d_eta);

    py::class_<HessTriple>(m, "HessTriple")
        .def_readonly("d_aa", &HessTriple::d_aa)
        .def_readonly("d_ae", &HessTriple::d_ae)
        .def_readonly("d_ee", &HessTriple::d_ee);

    py::class_<OptimalityReport>(m, "OptimalityReport")
        .def_readonly("eta0", &OptimalityReport::eta0)
        .def_readonly("c", &OptimalityReport::c)
        .def_readonly("grad_K", &OptimalityReport::grad_K)
        .def_readonly("grad_H", &OptimalityReport::grad_H)
        .def_readonly("lambda_", &OptimalityReport::lambda)
        .def_readonly("collinearity_residual", &OptimalityReport::collinearity_residual)
        .def_readonly("constrained_second_derivative",
                      &OptimalityReport::constrained_second_derivative)
        .def("passes", &OptimalityReport::passes);

    m.def("smooth_path", &smooth_path, py::arg("x"), py::arg("alpha"), py::arg("prev_smooth"));
    m.def("apply_hysteresis", &apply_hysteresis, py::arg("x_smooth"), py::arg("eta"),
          py::arg("w0"));
    m.def("estimate_K_mc", &estimate_K_mc, py::arg("params"), py::arg("T"), py::arg("seed"));
    m.def("estimate_H_mc", &estimate_H_mc, py::arg("params"), py::arg("n"), py::arg("seed"),
          py::arg("workers") = 1);

    m.def("K_axis", &K_axis, py::arg("eta"), py::arg("rho"));
    m.def("K0", &K0, py::arg("alpha"), py::arg("eta"), py::arg("rho"));
    m.def("E0", &E0, py::arg("alpha"), py::arg("eta"), py::arg("rho"));
    m.def("H_at0", &H_at0, py::arg("eta"));
    m.def("grad_K_at0", &grad_K_at0, py::arg("eta"), py::arg("rho"));
    m.def("grad_H_at0", &grad_H_at0, py::arg("eta"));
    m.def("hess_K_at0", &hess_K_at0, py::arg("eta"), py::arg("rho"));
    m.def("hess_H_at0", &hess_H_at0, py::arg("eta"));
    m.def("lagrange_lambda", &lagrange_lambda, py::arg("eta"), py::arg("rho"));
    m.def("constrained_second_derivative", &constrained_second_derivative, py::arg("eta"),
          py::arg("rho"));
    m.def("improvement_ratio", &improvement_ratio, py::arg("alpha"), py::arg("eta"));

    m.def("K0_numeric", [](double a, double e, double r) { return K0_numeric(a, e, r); },
          py::arg("alpha"), py::arg("eta"), py::arg("rho"));
    m.def("E0_numeric", [](double a, double e, double r) { return E0_numeric(a, e, r); },
          py::arg("alpha"), py::arg("eta"), py::arg("rho"));
    m.def("K_truncated", [](double a, double e, double r) { return K_truncated(a, e, r); },
          py::arg("alpha"), py::arg("eta"), py::arg("rho"));

    m.def("compute_H", [](const ModelParams& p) { return compute_H(p); }, py::arg("params"),
          py::call_guard<py::gil_scoped_release>());
    m.def("eta_for_level", &eta_for_level, py::arg("c"), py::arg("rho"));
    m.def("local_optimality_report", &local_optimality_report, py::arg("eta0"), py::arg("rho"));
}
