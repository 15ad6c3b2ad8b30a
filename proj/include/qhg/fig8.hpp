#pragma once
// The figure-eight-knot worked example: canonical two-tetrahedron mesh,
// deformation space, flattening families, closed-form partition
// functions, Dehn-filled values, and cross-checks against the generic
// state-sum engine.

#include <optional>

#include "qhg/decorate.hpp"
#include "qhg/statesum.hpp"

namespace qhg {

// A point of the deformation space, coordinatized by the modulus w2 of
// the positively oriented tetrahedron.  The negative tetrahedron's
// modulus z2 = 1/2 + branch * sqrt(1/4 + 1/(w2(w2-1))) (principal square
// root; branch in {+1,-1} selects the sheet).
struct Fig8Point {
    cplx w2;
    int branch = +1;
    ModuliTriple w, z;  // moduli triples of Delta+ and Delta-
};

Fig8Point fig8_point(cplx w2, int branch = +1);
Fig8Point fig8_complete();  // w_j = e^{i pi/3}, z_j = e^{-i pi/3}

// Residual of the edge compatibility relation w1 w2^2 z0^{-2} z1^{-1} = 1.
cplx fig8_edge_relation(const Fig8Point& p);

// The canonical two-tetrahedron mesh: every face of Delta+ glued to
// Delta-, two edge classes of degree six, one toroidal vertex.
Mesh build_fig8_mesh(const Fig8Point& p, const IntTriples& f, const IntTriples& c);
Mesh build_fig8_complete_mesh();  // the frozen complete-structure decorations

// Closed normal paths on the cusp torus.
NormalPath fig8_meridian();
NormalPath fig8_longitude();
NormalPath fig8_longitude_reversed();

// The integer family of flattenings with meridian weight k_m and
// longitude weight k_l (k_l even), parametrized by f0p = f_0^+.
// Returns (f+, f-).
std::pair<std::array<int, 3>, std::array<int, 3>> standard_flattening(int k_m, int k_l,
                                                                      int f0p);

// Flattenings adapted to (p,q) Dehn surgery with ps - qr = 1: the
// standard family at k_m = -2s, k_l = 2r.
std::pair<std::array<int, 3>, std::array<int, 3>> surgery_flattening(int p, int q, int r,
                                                                     int s, int f0p);

// S(w0', w1') = sum_beta zeta^{beta^2} prod_{k<=beta} w1'^{-1}/(1 - w0' zeta^k).
cplx s_sum(cplx w0p, cplx w1p, const LevelN& N);

// Closed-form partition function of the decorated two-tetrahedron mesh.
cplx closed_form(const LevelN& N, const FlatChargedTet& plus, const FlatChargedTet& minus);

// Dehn-filled value at a deformed point, with the surgery flattening
// (f0p = 0) and the standard charges installed.  Requires N - 2s >= 0.
cplx dehn_filled_value(const LevelN& N, int p, int q, int r, int s, const Fig8Point& pt);

// Damped Newton solve of p log mu(m) + q log mu(l) = 2 pi i over both
// square-root branches; nullopt if no start converges.
std::optional<Fig8Point> solve_dehn_point(int p, int q);

// Generic state-sum contraction of the complete mesh versus the closed
// form (normalized by N^2), compared up to sign and N-th roots of unity.
PhaseWitness fig8_crosscheck(const LevelN& N, double tol = 1e-8);

}  // namespace qhg
