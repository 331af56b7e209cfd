#include <stdexcept>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diskbond/bounds.hpp"
#include "diskbond/duality.hpp"
#include "diskbond/errors.hpp"
#include "diskbond/field.hpp"
#include "diskbond/geometry.hpp"
#include "diskbond/spectral.hpp"
#include "diskbond/verify.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    using namespace diskbond;

    m.doc() =
        "Conduction through two equal imperfectly bonded disks: conformal "
        "frame, coefficient solve, field evaluation, bounds, verification.";

    py::register_exception<ConditioningError>(m, "ConditioningError",
                                              PyExc_ValueError);
    py::register_exception<TruncationCapError>(m, "TruncationCapError",
                                               PyExc_ValueError);

    py::enum_<HMode>(m, "HMode")
        .value("lc_x1", HMode::lc_x1)
        .value("hc_x2", HMode::hc_x2);

    py::enum_<Region>(m, "Region")
        .value("matrix", Region::matrix)
        .value("in_d1", Region::in_d1)
        .value("in_d2", Region::in_d2)
        .value("near_boundary", Region::near_boundary);

    py::class_<DiskPair>(m, "DiskPair")
        .def(py::init<double, double>(), py::arg("r"), py::arg("eps"))
        .def_readonly("r", &DiskPair::r)
        .def_readonly("eps", &DiskPair::eps)
        .def("center1", &DiskPair::center1)
        .def("center2", &DiskPair::center2);

    m.def("classify", &classify, py::arg("pair"), py::arg("z"),
          py::arg("tol") = 1e-14);

    py::class_<ConformalFrame>(m, "ConformalFrame")
        .def_readonly("r", &ConformalFrame::r)
        .def_readonly("eps", &ConformalFrame::eps)
        .def_readonly("rho", &ConformalFrame::rho)
        .def_readonly("beta", &ConformalFrame::beta)
        .def_readonly("mu", &ConformalFrame::mu)
        .def_readonly("one_minus_rho", &ConformalFrame::one_minus_rho)
        .def("rho_pow", &ConformalFrame::rho_pow, py::arg("n"));

    m.def(
        "derive_frame",
        [](double r, double eps) { return derive_frame(r, eps); },
        py::arg("r"), py::arg("eps"));
    m.def(
        "moebius",
        [](const ConformalFrame& frame, complexd z) {
            const ExtPoint w = moebius(frame, z);
            if (w.infinite) {
                throw std::domain_error("moebius: z is the pole beta/2");
            }
            return w.value;
        },
        py::arg("frame"), py::arg("z"));
    m.def(
        "moebius_inv",
        [](const ConformalFrame& frame, complexd zeta) {
            const ExtPoint w = moebius_inv(frame, zeta);
            if (w.infinite) {
                throw std::domain_error("moebius_inv: zeta = 1 maps to infinity");
            }
            return w.value;
        },
        py::arg("frame"), py::arg("zeta"));

    py::class_<SpectralSolution>(m, "SpectralSolution")
        .def_readonly("N", &SpectralSolution::N)
        .def_readonly("gamma", &SpectralSolution::gamma)
        .def_readonly("a", &SpectralSolution::a)
        .def_readonly("c", &SpectralSolution::c)
        .def_readonly("lambda_i", &SpectralSolution::lambda_i)
        .def_readonly("lambda_e", &SpectralSolution::lambda_e)
        .def_readonly("tail_bound", &SpectralSolution::tail_bound)
        .def_readonly("residual_norm", &SpectralSolution::residual_norm)
        .def("coeff_a", &SpectralSolution::coeff_a, py::arg("n"))
        .def("coeff_c", &SpectralSolution::coeff_c, py::arg("n"));

    m.def("choose_truncation", &choose_truncation, py::arg("frame"),
          py::arg("gamma"), py::arg("tol"));
    m.def("solve_coefficients", &solve_coefficients, py::arg("frame"),
          py::arg("gamma"), py::arg("tol") = 1e-12);
    m.def("perfect_bonding_coefficients", &perfect_bonding_coefficients,
          py::arg("frame"), py::arg("N"));
    m.def("fixed_point_residual", &fixed_point_residual, py::arg("frame"),
          py::arg("sol"), py::arg("n"));

    py::class_<FieldSample>(m, "FieldSample")
        .def_readonly("x", &FieldSample::x)
        .def_readonly("y", &FieldSample::y)
        .def_readonly("u", &FieldSample::u)
        .def_readonly("ux", &FieldSample::ux)
        .def_readonly("uy", &FieldSample::uy)
        .def_readonly("grad_norm", &FieldSample::grad_norm);

    py::class_<ComplexPotential>(m, "ComplexPotential")
        .def_readonly("frame", &ComplexPotential::frame)
        .def_readonly("sol", &ComplexPotential::sol)
        .def_readonly("h_mode", &ComplexPotential::h_mode)
        .def_readonly("n_eval", &ComplexPotential::n_eval);

    m.def("make_potential", &make_potential, py::arg("frame"), py::arg("sol"),
          py::arg("h_mode") = HMode::lc_x1);
    m.def("conjugate_potential", &conjugate_potential, py::arg("pot"));
    m.def("eval_u", &eval_u, py::arg("pot"), py::arg("z"));
    m.def("eval_delta", &eval_delta, py::arg("pot"), py::arg("z"));
    m.def("eval_grad", &eval_grad, py::arg("pot"), py::arg("z"));
    m.def("sup_grad", &sup_grad, py::arg("pot"));

    py::class_<BoundSet>(m, "BoundSet")
        .def_readonly("b1", &BoundSet::b1)
        .def_readonly("b2", &BoundSet::b2)
        .def_readonly("c_d", &BoundSet::c_d)
        .def_readonly("contrast_radius", &BoundSet::contrast_radius)
        .def_readonly("grad_bound", &BoundSet::grad_bound);

    py::class_<BoundCheck>(m, "BoundCheck")
        .def_readonly("name", &BoundCheck::name)
        .def_readonly("passed", &BoundCheck::passed)
        .def_readonly("worst_margin", &BoundCheck::worst_margin)
        .def_readonly("worst_n", &BoundCheck::worst_n);

    m.def("compute_bounds", &compute_bounds, py::arg("frame"),
          py::arg("gamma"));
    m.def("check_sandwich", &check_sandwich, py::arg("sol"), py::arg("bounds"));
    m.def("check_envelopes", &check_envelopes, py::arg("sol"),
          py::arg("bounds"));
    m.def("check_difference_bounds", &check_difference_bounds, py::arg("sol"),
          py::arg("bounds"));
    m.def("gradient_sup_bound", &gradient_sup_bound, py::arg("frame"),
          py::arg("gamma"));

    m.def("hc_boundary_residual", &hc_boundary_residual, py::arg("pot"),
          py::arg("alpha"), py::arg("m") = 256);

    py::class_<RobinResult>(m, "RobinResult")
        .def_readonly("residual_d1", &RobinResult::residual_d1)
        .def_readonly("const_d1", &RobinResult::const_d1)
        .def_readonly("residual_d2", &RobinResult::residual_d2)
        .def_readonly("const_d2", &RobinResult::const_d2);

    py::class_<FluxResult>(m, "FluxResult")
        .def_readonly("d1", &FluxResult::d1)
        .def_readonly("d2", &FluxResult::d2);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("robin_residual_d1",
                      &VerificationReport::robin_residual_d1)
        .def_readonly("robin_residual_d2",
                      &VerificationReport::robin_residual_d2)
        .def_readonly("robin_const_d1", &VerificationReport::robin_const_d1)
        .def_readonly("robin_const_d2", &VerificationReport::robin_const_d2)
        .def_readonly("hc_residual", &VerificationReport::hc_residual)
        .def_readonly("flux_d1", &VerificationReport::flux_d1)
        .def_readonly("flux_d2", &VerificationReport::flux_d2)
        .def_readonly("decay_product", &VerificationReport::decay_product)
        .def_readonly("oracle_gap", &VerificationReport::oracle_gap);

    m.def("robin_residual", &robin_residual, py::arg("pot"), py::arg("gamma"),
          py::arg("m") = 1024);
    m.def("flux_integral", &flux_integral, py::arg("pot"),
          py::arg("m") = 1024);
    m.def("decay_check", &decay_check, py::arg("pot"), py::arg("radii"));
    m.def("dense_oracle", &dense_oracle, py::arg("frame"), py::arg("gamma"),
          py::arg("N"));
    m.def("verify_solution", &verify_solution, py::arg("pot"),
          py::arg("gamma"));
}
