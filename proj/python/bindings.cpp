#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsk/canonical.hpp"
#include "qsk/cyclotomic.hpp"
#include "qsk/randomness.hpp"
#include "qsk/satwap.hpp"
#include "qsk/selftest.hpp"
#include "qsk/sos.hpp"

namespace py = pybind11;

namespace {

py::list checks_to_list(const qsk::CheckList& list) {
    py::list out;
    for (const auto& c : list.checks()) {
        py::dict d;
        d["name"] = c.name;
        d["residual"] = c.residual;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SATWAP Bell functional, sum-of-squares checks and self-testing extraction";

    py::register_exception<qsk::ExtractionError>(m, "ExtractionError", PyExc_RuntimeError);
    py::register_exception<qsk::ObservableError>(m, "ObservableError", PyExc_ValueError);

    py::class_<qsk::Realization>(m, "Realization")
        .def(py::init([](int d, const qsk::StateVector& state, std::array<qsk::ComplexMatrix, 2> a,
                         std::array<qsk::ComplexMatrix, 2> b) {
                 qsk::Realization r{d, state, std::move(a), std::move(b)};
                 r.validate();
                 return r;
             }),
             py::arg("d"), py::arg("state"), py::arg("A"), py::arg("B"))
        .def_readonly("d", &qsk::Realization::d)
        .def_readonly("state", &qsk::Realization::state)
        .def_readonly("A", &qsk::Realization::A)
        .def_readonly("B", &qsk::Realization::B)
        .def_property_readonly("dims", [](const qsk::Realization& r) { return py::make_tuple(r.dim_a(), r.dim_b()); });

    m.def("coefficient_a", &qsk::coefficient_a, py::arg("d"), py::arg("k"));
    m.def("classical_bound", &qsk::classical_bound, py::arg("d"));
    m.def("quantum_bound", &qsk::quantum_bound, py::arg("d"));
    m.def(
        "local_bound", [](int d) { return qsk::local_bound_bruteforce(qsk::probability_form(qsk::satwap_functional(d))).value; },
        py::arg("d"), "Exact maximum over deterministic strategies");
    m.def("satwap_value", [](const qsk::Realization& r) { return qsk::satwap_value(r); }, py::arg("realization"));

    m.def("z_observable", &qsk::z_observable, py::arg("d"));
    m.def("t_observable", &qsk::t_observable, py::arg("d"));
    m.def("ideal_alice_observables", &qsk::ideal_alice_observables, py::arg("d"));
    m.def("maximally_entangled", &qsk::maximally_entangled, py::arg("d"));
    m.def("ideal_realization", &qsk::ideal_realization, py::arg("d"));
    m.def("cglmp_realization", &qsk::cglmp_realization, py::arg("d"));
    m.def("w_alice", &qsk::w_alice, py::arg("d"));

    m.def(
        "probabilities",
        [](const qsk::Realization& r) {
            const qsk::CorrelationTensor p = qsk::born_probabilities(r);
            const qsk::Scenario s = p.scenario();
            py::list out;
            for (int x = 0; x < 2; ++x) {
                py::list row;
                for (int y = 0; y < 2; ++y) {
                    Eigen::MatrixXd grid(s.d, s.d);
                    for (int a = 0; a < s.d; ++a) {
                        for (int b = 0; b < s.d; ++b) {
                            grid(a, b) = p(x, y, a, b);
                        }
                    }
                    row.append(grid);
                }
                out.append(row);
            }
            return out;
        },
        py::arg("realization"), "p[x][y] as a d x d array indexed (a, b)");

    m.def(
        "sos_residuals",
        [](const qsk::Realization& r) {
            const auto bob = qsk::sos_residual_bob(r);
            const auto alice = qsk::sos_residual_alice(r);
            py::dict d;
            d["bob"] = bob.operator_identity;
            d["alice"] = alice.operator_identity;
            d["bob_stabilizer"] = bob.max_stabilizer();
            d["alice_stabilizer"] = alice.max_stabilizer();
            return d;
        },
        py::arg("realization"));

    m.def("scramble", &qsk::scramble, py::arg("realization"), py::arg("aux_a"), py::arg("aux_b"), py::arg("seed"));
    m.def(
        "extract",
        [](const qsk::Realization& r, double tol_scale) {
            qsk::ExtractionOptions options;
            options.tol_scale = tol_scale;
            const qsk::ExtractionResult res = qsk::extract(r, options);
            py::dict d;
            d["success"] = res.success();
            d["fidelity"] = res.fidelity;
            d["U_A"] = res.U_A;
            d["U_B"] = res.U_B;
            d["aux_dims"] = py::make_tuple(res.aux_a, res.aux_b);
            d["aux_state"] = res.aux_state;
            d["checks"] = checks_to_list(res.residuals);
            return d;
        },
        py::arg("realization"), py::arg("tol_scale") = 1.0);

    m.def(
        "cyclotomic",
        [](int n) {
            const qsk::RationalPolynomial phi = qsk::cyclotomic_poly(n);
            std::vector<std::string> out;
            for (const auto& c : phi.coefficients()) {
                out.push_back(c.str());
            }
            return out;
        },
        py::arg("n"), "Coefficients of Phi_n in ascending degree, as exact strings");
    m.def("certified_bits", &qsk::certified_bits, py::arg("d"));
}
