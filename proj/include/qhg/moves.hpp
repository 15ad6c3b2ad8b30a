#pragma once
// 2<->3 transit machinery and the pentagon-identity harness, plus the
// bubble-transit constraint checker.

#include "qhg/statesum.hpp"

namespace qhg {

// Moduli of the three tetrahedra replacing a two-tetrahedron bipyramid
// with moduli x and y: (y/x, y(1-x)/(x(1-y)), (1-x)/(1-y)).
std::array<cplx, 3> two_three_moduli(cplx x, cplx y);

// Decorated sides of a 2<->3 transit on the bipyramid over five ordered
// points.  The two-tetrahedron side has vertex sets (0,1,2,4), (0,2,3,4)
// and the three-tetrahedron side (0,1,2,3), (1,2,3,4), (0,1,3,4); x and y
// are the cross-ratio moduli of the two-side tetrahedra.  Flattenings are
// canonical, charges are (0,1,0) on the two side and solved on the three
// side so that all common edge totals agree and the central edge carries
// charge 2.
struct PentagonSides {
    std::vector<FlatChargedTet> two_side, three_side;
    std::vector<std::array<int, 4>> two_verts, three_verts;  // global vertex ids
};
PentagonSides pentagon_transit(cplx x, cplx y, int b_sign);

// Convenience wrapper returning both sides of the transit as flat/charged
// tetrahedra (the before/after fragments of a QHG 2->3 move).
struct TransitResult {
    std::vector<FlatChargedTet> before, after;
};
TransitResult two_three_transit(cplx x, cplx y, int b_sign = +1);

// Boundary tensors of the two sides compared up to sign and N-th roots of
// unity.  For N = 1 the comparison is between the scalar products of the
// extended Rogers exponentials.
PhaseWitness pentagon_check(cplx x, cplx y, const LevelN& N, int b_sign = +1,
                            double tol = 1e-8);

// Constraint checks of a bubble transit: the three new interior edges
// must carry trivial modulus and log-branch totals and charges (0,0,2),
// the marked edge charge must shift by 2, and every other matched edge
// must keep its totals.
struct BubbleSpec {
    std::vector<std::pair<int, int>> common_edges;  // (before class, after class)
    std::array<int, 3> new_edges;                   // edge classes of the after mesh
    int marked_before = -1, marked_after = -1;
};
ValidationReport bubble_constraints_check(const Mesh& before, const Mesh& after,
                                          const BubbleSpec& spec, double tol = 1e-9);

}  // namespace qhg
