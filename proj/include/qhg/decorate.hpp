#pragma once
// Integer decoration solvers: global flattenings and charges on a mesh,
// the lattice of solutions, and weight-constrained variants.

#include <optional>
#include <utility>
#include <vector>

#include "qhg/latsolve.hpp"
#include "qhg/mesh.hpp"

namespace qhg {

using IntTriples = std::vector<std::array<int, 3>>;  // one triple per tet

struct PathConstraint {
    NormalPath path;
    cplx target;  // required flattening weight of the path
};

// Solve for integer flattenings: per tet the log-branch components sum to
// zero, every interior edge has total log-branch 0, and each constrained
// path has the requested weight.  Returns nullopt when the system has no
// integer solution (including when a right-hand side fails to be an
// integer at tolerance tol).
std::optional<IntTriples> solve_flattening(const Mesh& m,
                                           const std::vector<PathConstraint>& constraints = {},
                                           double tol = 1e-7);

// Solve for integer charges: per tet sum 1; total 0 on Hamiltonian
// interior edges and 2 on the others.
std::optional<IntTriples> solve_charge(const Mesh& m);

// Basis of the integer lattice preserving all per-tet sums and all
// interior edge totals.  Flattening and charge systems differ in the edge
// coefficients (signed by *_b versus unsigned).
std::vector<ivec> lattice_generators(const Mesh& m, WeightKind kind = WeightKind::flattening);

// Flatten/unflatten between per-tet triples and plain integer vectors.
ivec triples_to_vec(const IntTriples& t);
IntTriples vec_to_triples(const ivec& v);

// Install solver output on a mesh's tetrahedra.
void apply_flattening(Mesh& m, const IntTriples& f);
void apply_charge(Mesh& m, const IntTriples& c);

}  // namespace qhg
