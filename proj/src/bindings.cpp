// Python bindings for the quantum hyperbolic geometry core.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhg/characters.hpp"
#include "qhg/decorate.hpp"
#include "qhg/fig8.hpp"
#include "qhg/meshio.hpp"
#include "qhg/moves.hpp"
#include "qhg/statesum.hpp"

namespace py = pybind11;
using namespace qhg;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "quantum hyperbolic geometry at desk scale";

    py::class_<LevelN>(mod, "LevelN")
        .def(py::init<int>())
        .def_readonly("n", &LevelN::n)
        .def_readonly("m", &LevelN::m)
        .def_readonly("zeta", &LevelN::zeta);

    mod.def("principal_log", &principal_log);
    mod.def("g_func", &g_func);
    mod.def("h_func", &h_func);
    mod.def("omega", &omega);
    mod.def("bracket", &bracket);
    mod.def("rogers_extended", &rogers_extended);
    mod.def("lobachevsky", &lobachevsky);

    py::class_<ModuliTriple>(mod, "ModuliTriple")
        .def("__getitem__", [](const ModuliTriple& t, int j) { return t[j]; });
    mod.def("moduli_from_w0", &moduli_from_w0);

    py::class_<FlatChargedTet>(mod, "FlatChargedTet")
        .def(py::init<cplx, std::array<int, 3>, std::array<int, 3>, int>(), py::arg("w0"),
             py::arg("f"), py::arg("c"), py::arg("b_sign"))
        .def_readonly("w", &FlatChargedTet::w)
        .def_readonly("f", &FlatChargedTet::f)
        .def_readonly("c", &FlatChargedTet::c)
        .def_property_readonly("b_sign",
                               [](const FlatChargedTet& t) { return t.branching.b_sign; });
    mod.def("log_branch", &log_branch);
    mod.def("w_prime", &w_prime);
    mod.def("r1_scalar", &r1_scalar);

    py::class_<Tensor4>(mod, "Tensor4")
        .def_readonly("n", &Tensor4::n)
        .def("at", [](const Tensor4& t, int i, int j, int k, int l) { return t.at(i, j, k, l); });
    mod.def("ln_tensor", &ln_tensor);
    mod.def("ln_tensor_inv", &ln_tensor_inv);
    mod.def("identity_defect", &identity_defect);
    mod.def("compose", &compose);
    mod.def("rn_tensor", &rn_tensor);

    py::class_<Gluing>(mod, "Gluing")
        .def(py::init([](int ta, int fa, int tb, int fb, std::array<int, 3> p) {
                 return Gluing{ta, fa, tb, fb, p};
             }),
             py::arg("tet_a"), py::arg("face_a"), py::arg("tet_b"), py::arg("face_b"),
             py::arg("perm") = std::array<int, 3>{0, 1, 2});

    py::class_<ValidationReport>(mod, "ValidationReport")
        .def("ok", &ValidationReport::ok)
        .def_property_readonly("violations", [](const ValidationReport& r) {
            py::list out;
            for (const auto& v : r.violations)
                out.append(py::make_tuple(v.what, v.edge_class, v.residual));
            return out;
        });

    py::class_<Mesh>(mod, "Mesh")
        .def(py::init<std::vector<FlatChargedTet>, std::vector<Gluing>, std::set<int>>(),
             py::arg("tets"), py::arg("gluings"), py::arg("ham_edges") = std::set<int>{})
        .def_property_readonly("n_tets", &Mesh::n_tets)
        .def("edge_class", &Mesh::edge_class)
        .def_property_readonly("n_edge_classes", &Mesh::n_edge_classes)
        .def("edge_interior", &Mesh::edge_interior)
        .def("edge_total_modulus", &Mesh::edge_total_modulus)
        .def("edge_total_log_branch", &Mesh::edge_total_log_branch)
        .def("edge_total_charge", &Mesh::edge_total_charge)
        .def("validate_I", &Mesh::validate_I, py::arg("tol") = 1e-9)
        .def("validate_flattened", &Mesh::validate_flattened, py::arg("tol") = 1e-9)
        .def("validate_charged", &Mesh::validate_charged);

    mod.def("load_mesh_json", &load_mesh_json);
    mod.def("load_mesh_file", &load_mesh_file);
    mod.def("save_mesh_json", &save_mesh_json);

    mod.def("solve_flattening",
            [](const Mesh& m) { return solve_flattening(m); });
    mod.def("solve_charge", &solve_charge);
    mod.def("apply_flattening", &apply_flattening);
    mod.def("apply_charge", &apply_charge);

    py::class_<LTensor>(mod, "LTensor")
        .def_readonly("n", &LTensor::n)
        .def_readonly("labels", &LTensor::labels)
        .def_readonly("data", &LTensor::data)
        .def("scalar", &LTensor::scalar)
        .def("value", &LTensor::value);

    py::class_<PhaseWitness>(mod, "PhaseWitness")
        .def_readonly("equal", &PhaseWitness::equal)
        .def_readonly("scalar", &PhaseWitness::scalar)
        .def_readonly("phase_index", &PhaseWitness::phase_index)
        .def_readonly("sign", &PhaseWitness::sign);

    mod.def("trace_tensor", &trace_tensor);
    mod.def("trace_tensor_brute_force", &trace_tensor_brute_force);
    mod.def("eq_mod_n", &eq_mod_n, py::arg("a"), py::arg("b"), py::arg("N"),
            py::arg("tol") = 1e-8);

    mod.def("two_three_moduli", &two_three_moduli);
    mod.def("pentagon_check", &pentagon_check, py::arg("x"), py::arg("y"), py::arg("N"),
            py::arg("b_sign") = +1, py::arg("tol") = 1e-8);

    py::class_<Fig8Point>(mod, "Fig8Point")
        .def_readonly("w2", &Fig8Point::w2)
        .def_readonly("branch", &Fig8Point::branch)
        .def_readonly("w", &Fig8Point::w)
        .def_readonly("z", &Fig8Point::z);
    mod.def("fig8_point", &fig8_point, py::arg("w2"), py::arg("branch") = +1);
    mod.def("fig8_complete", &fig8_complete);
    mod.def("fig8_edge_relation", &fig8_edge_relation);
    mod.def("build_fig8_complete_mesh", &build_fig8_complete_mesh);
    mod.def("standard_flattening", &standard_flattening);
    mod.def("surgery_flattening", &surgery_flattening);
    mod.def("closed_form", &closed_form);
    mod.def("dehn_filled_value", &dehn_filled_value);
    mod.def("solve_dehn_point", &solve_dehn_point);
    mod.def("fig8_crosscheck", &fig8_crosscheck, py::arg("N"), py::arg("tol") = 1e-8);
}
