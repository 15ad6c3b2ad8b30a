#pragma once
// PSL(2,C) cocycles, idealization into cross-ratio moduli, canonical
// flattenings, (-)-exponential parameters on the punctured-torus ideal
// triangulation, and holonomy reconstruction from those parameters.

#include <map>
#include <random>

#include "qhg/mesh.hpp"

namespace qhg {

struct Psl2 {
    cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Psl2 operator*(const Psl2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    cplx det() const { return a * d - b * c; }
    Psl2 inverse() const {
        cplx dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    cplx tr2() const {
        cplx t = a + d;
        return t * t / det();
    }
    bool equal_up_to_sign(const Psl2& o, double tol = 1e-10) const;
};

// Point of CP^1 in homogeneous coordinates.
struct PPoint {
    cplx x = 0.0, y = 1.0;  // (x : y); infinity is (1 : 0)
};
PPoint ppoint(cplx z);
PPoint ppoint_inf();
PPoint apply(const Psl2& m, const PPoint& p);
cplx det2(const PPoint& u, const PPoint& v);

// Cross-ratio w0 = (u2-u1)(u3-u0) / ((u2-u0)(u3-u1)) of four distinct
// points.
cplx cross_ratio(const PPoint& u0, const PPoint& u1, const PPoint& u2, const PPoint& u3);

// Idealization of one tetrahedron from a cocycle restricted to it, with
// base point 0: the four points are 0, z01(0), z02(0), z03(0).
ModuliTriple idealize_tet(const Psl2& z01, const Psl2& z02, const Psl2& z03);

// Canonical log-branches of the tetrahedron on four finite points; the
// three values sum to zero exactly.
std::array<cplx, 3> canonical_flattening(cplx u0, cplx u1, cplx u2, cplx u3);

// Integer flattening recovering given log-branches: f_j = (l_j - log w_j)/(i pi).
std::array<int, 3> flattening_from_logs(const ModuliTriple& w, const std::array<cplx, 3>& l);

// Idealize a whole mesh from a coboundary cocycle given by one matrix per
// vertex class (z(uv) = g_u^{-1} g_v): installs cross-ratio moduli and
// canonical flattenings on every tetrahedron.
Mesh idealize_mesh(const Mesh& topology, const std::vector<Psl2>& vertex_gauge);

// --- holonomy building blocks ---------------------------------------
// Turn matrices: p swaps (0,1,inf) -> (inf,1,0); l maps (0,1,inf) ->
// (inf,0,1); r = l^{-1}; gamma(W) = diag(W^{1/2}, W^{-1/2}).
Psl2 turn_p();
Psl2 turn_l();
Psl2 turn_r();
Psl2 edge_gamma(cplx w);

// --- punctured torus -------------------------------------------------
// The standard two-triangle ideal triangulation with edge classes a, b, d
// and cocycle relation z(d) = z(a) z(b).
struct SurfaceCocycle {
    Psl2 a, b, d;
};

// Draw a cocycle with commuting holonomy (shared fixed points), suitable
// for round-trip tests.
SurfaceCocycle sample_cocycle(std::mt19937_64& rng);

// (-)-exponential parameter at edge class cls in {'a','b','d'}.
cplx w_minus(const SurfaceCocycle& z, char cls);

// A loop given as the sequence of (triangle, crossed edge class).
using SurfaceLoop = std::vector<std::pair<int, char>>;
extern const SurfaceLoop LOOP_A;  // generator crossing b then d
extern const SurfaceLoop LOOP_B;  // generator crossing d then a

// Reconstruct the holonomy of a loop from per-edge parameters by
// developing the triangulation across the crossed edges.
Psl2 holonomy_from_parameters(const std::map<char, cplx>& params, const SurfaceLoop& loop);

}  // namespace qhg
