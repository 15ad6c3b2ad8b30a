#pragma once
// JSON mesh format: load/save of decorated triangulations.
//
// Schema: {"n_tets": int,
//          "gluings": [[tetA, faceA, tetB, faceB, [p0,p1,p2]], ...],
//          "moduli": [[re, im], ...]            (w0 per tet),
//          "flattenings": [[f0,f1,f2], ...]     (optional),
//          "charges": [[c0,c1,c2], ...]         (optional),
//          "orientations": [+1|-1, ...],
//          "hamiltonian_edges": [class, ...]    (optional)}

#include <string>

#include "qhg/mesh.hpp"

namespace qhg {

Mesh load_mesh_json(const std::string& text);
Mesh load_mesh_file(const std::string& path);
std::string save_mesh_json(const Mesh& m);

}  // namespace qhg
