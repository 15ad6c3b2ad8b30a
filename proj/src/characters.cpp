#include "qhg/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace qhg {

bool Psl2::equal_up_to_sign(const Psl2& o, double tol) const {
    auto dist = [&](double s) {
        return std::max(std::max(std::abs(a - s * o.a), std::abs(b - s * o.b)),
                        std::max(std::abs(c - s * o.c), std::abs(d - s * o.d)));
    };
    return std::min(dist(1.0), dist(-1.0)) <= tol;
}

PPoint ppoint(cplx z) { return {z, 1.0}; }
PPoint ppoint_inf() { return {1.0, 0.0}; }

PPoint apply(const Psl2& m, const PPoint& p) {
    return {m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y};
}

cplx det2(const PPoint& u, const PPoint& v) { return u.x * v.y - u.y * v.x; }

cplx cross_ratio(const PPoint& u0, const PPoint& u1, const PPoint& u2, const PPoint& u3) {
    return det2(u2, u1) * det2(u3, u0) / (det2(u2, u0) * det2(u3, u1));
}

namespace {

cplx to_affine(const PPoint& p) {
    if (std::abs(p.y) < 1e-12 * std::abs(p.x))
        throw std::domain_error("point at infinity where a finite point is required");
    return p.x / p.y;
}

cplx modulus_at(const std::array<PPoint, 4>& pts, int i, int j) {
    cplx w0 = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
    cplx w[3] = {w0, 1.0 / (1.0 - w0), 1.0 - 1.0 / w0};
    return w[moduli_index(i, j)];
}

}  // namespace

ModuliTriple idealize_tet(const Psl2& z01, const Psl2& z02, const Psl2& z03) {
    std::array<PPoint, 4> u = {ppoint(0.0), apply(z01, ppoint(0.0)), apply(z02, ppoint(0.0)),
                               apply(z03, ppoint(0.0))};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(det2(u[i], u[j])) < 1e-12)
                throw std::domain_error("idealize_tet: coincident vertices");
    return moduli_from_w0(cross_ratio(u[0], u[1], u[2], u[3]));
}

std::array<cplx, 3> canonical_flattening(cplx u0, cplx u1, cplx u2, cplx u3) {
    auto L = [](cplx z) { return principal_log(z); };
    cplx l0 = L(u2 - u1) + L(u3 - u0) - L(u2 - u0) - L(u3 - u1);
    cplx l1 = L(u2 - u0) + L(u3 - u1) - L(u1 - u0) - L(u3 - u2) + I * PI;
    cplx l2 = L(u3 - u2) + L(u1 - u0) - L(u3 - u0) - L(u2 - u1) - I * PI;
    return {l0, l1, l2};
}

std::array<int, 3> flattening_from_logs(const ModuliTriple& w, const std::array<cplx, 3>& l) {
    std::array<int, 3> f{};
    for (int j = 0; j < 3; ++j) {
        cplx q = (l[j] - principal_log(w[j])) / (I * PI);
        double r = std::round(q.real());
        if (std::abs(q - cplx(r, 0.0)) > 1e-7)
            throw std::domain_error("flattening_from_logs: log-branch is not an i pi shift");
        f[j] = static_cast<int>(r);
    }
    return f;
}

Mesh idealize_mesh(const Mesh& topology, const std::vector<Psl2>& vertex_gauge) {
    if (static_cast<int>(vertex_gauge.size()) != topology.n_vertex_classes())
        throw std::invalid_argument("idealize_mesh: one matrix per vertex class required");
    std::vector<FlatChargedTet> tets;
    for (int t = 0; t < topology.n_tets(); ++t) {
        const Psl2& g0 = vertex_gauge[topology.vertex_class(t, 0)];
        std::array<cplx, 4> u{};
        for (int v = 0; v < 4; ++v) {
            Psl2 zv = g0.inverse() * vertex_gauge[topology.vertex_class(t, v)];
            u[v] = to_affine(apply(zv, ppoint(0.0)));
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(u[i] - u[j]) < 1e-10)
                    throw std::domain_error("idealize_mesh: tetrahedron " + std::to_string(t) +
                                            " is not idealizable");
        cplx w0 = cross_ratio(ppoint(u[0]), ppoint(u[1]), ppoint(u[2]), ppoint(u[3]));
        auto l = canonical_flattening(u[0], u[1], u[2], u[3]);
        ModuliTriple w = moduli_from_w0(w0);
        const FlatChargedTet& old = topology.tets()[t];
        FlatChargedTet nt(w0, flattening_from_logs(w, l), old.c, old.branching.b_sign);
        tets.push_back(nt);
    }
    return Mesh(std::move(tets), topology.gluings(), topology.ham_edges());
}

Psl2 turn_p() { return {0.0, 1.0, 1.0, 0.0}; }
Psl2 turn_l() { return {-1.0, 1.0, -1.0, 0.0}; }
Psl2 turn_r() { return turn_l().inverse(); }
Psl2 edge_gamma(cplx w) {
    cplx s = std::exp(0.5 * principal_log(w));
    return {s, 0.0, 0.0, 1.0 / s};
}

// ---------------------------------------------------------------------
// Punctured torus: two triangles, edge classes a, b, d with z(d)=z(a)z(b).
// Triangle slots carry edges e0=[v0v1], e1=[v1v2], e2=[v0v2].

namespace {

struct SlotEdge {
    char cls;
    int sgn;
};

const SlotEdge TRI_EDGES[2][3] = {{{'a', +1}, {'b', +1}, {'d', +1}},
                                  {{'b', +1}, {'a', +1}, {'d', +1}}};
const int SLOT_VERTS[3][2] = {{0, 1}, {1, 2}, {0, 2}};
// edge class -> (left germ, right germ) as (triangle, slot)
struct Germ {
    int tri, slot;
};
struct EdgeSides {
    Germ left, right;
};
EdgeSides edge_sides(char cls) {
    switch (cls) {
        case 'a': return {{0, 0}, {1, 1}};
        case 'b': return {{0, 1}, {1, 0}};
        case 'd': return {{1, 2}, {0, 2}};
    }
    throw std::invalid_argument("unknown edge class");
}

Psl2 cocycle_of(const SurfaceCocycle& z, char cls) {
    switch (cls) {
        case 'a': return z.a;
        case 'b': return z.b;
        case 'd': return z.d;
    }
    throw std::invalid_argument("unknown edge class");
}

// Combinatorics of one germ: the cyclic reorder of the triangle starting
// at p_e (the tail of the edge), and the positions of the head q and the
// far vertex in that order.
struct GermComb {
    std::array<int, 3> seq;
    int iq, ix;
};

GermComb germ_comb(int tri, int slot) {
    const SlotEdge& se = TRI_EDGES[tri][slot];
    int a = SLOT_VERTS[slot][0], b = SLOT_VERTS[slot][1];
    int pe = se.sgn > 0 ? a : b;
    int q = se.sgn > 0 ? b : a;
    GermComb g;
    for (int k = 0; k < 3; ++k) g.seq[k] = (pe + k) % 3;
    g.iq = (g.seq[1] == q) ? 1 : 2;
    g.ix = 3 - g.iq;
    return g;
}

// Positions 1..3 of roles (q, x_left, x_right) in the tetrahedron order:
// order constraints from both germs, tie broken by placing x_right
// earliest.
struct TetOrder {
    int q, xl, xr;
};

TetOrder tet_order(const GermComb& gl, const GermComb& gr) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    bool have = false;
    TetOrder best{};
    for (const auto& p : perms) {
        // p lists roles (0=q, 1=xl, 2=xr) in positions 1,2,3
        int pos[3];
        for (int i = 0; i < 3; ++i) pos[p[i]] = i + 1;
        bool ok_l = (pos[0] < pos[1]) == (gl.iq < gl.ix);
        bool ok_r = (pos[0] < pos[2]) == (gr.iq < gr.ix);
        if (ok_l && ok_r && (!have || pos[2] < best.xr)) {
            best = {pos[0], pos[1], pos[2]};
            have = true;
        }
    }
    if (!have) throw std::logic_error("tet_order: no consistent placement");
    return best;
}

// Transport matrix along the triangle edge from local vertex u to v.
Psl2 transport(const SurfaceCocycle& z, int tri, int u, int v) {
    for (int s = 0; s < 3; ++s) {
        int x = SLOT_VERTS[s][0], y = SLOT_VERTS[s][1];
        if ((x == u && y == v) || (x == v && y == u)) {
            Psl2 M = cocycle_of(z, TRI_EDGES[tri][s].cls);
            return (x == u && y == v) ? M : M.inverse();
        }
    }
    throw std::logic_error("transport: not an edge");
}

// Idealization of a triangle germ: positions of the local vertices in the
// order starting at p_e, developed from the base point 0.
std::array<PPoint, 3> germ_points(const SurfaceCocycle& z, int tri, const GermComb& g) {
    PPoint P0 = ppoint(0.0);
    return {P0, apply(transport(z, tri, g.seq[0], g.seq[1]), P0),
            apply(transport(z, tri, g.seq[0], g.seq[2]), P0)};
}

}  // namespace

cplx w_minus(const SurfaceCocycle& z, char cls) {
    EdgeSides es = edge_sides(cls);
    GermComb gl = germ_comb(es.left.tri, es.left.slot);
    GermComb gr = germ_comb(es.right.tri, es.right.slot);
    auto Pl = germ_points(z, es.left.tri, gl);
    auto Pr = germ_points(z, es.right.tri, gr);
    // The shared edge is developed identically from both sides.
    if (std::abs(det2(Pl[gl.iq], Pr[gr.iq])) >
        1e-8 * std::abs(Pl[gl.iq].x * Pr[gr.iq].y) + 1e-8)
        throw std::domain_error("w_minus: inconsistent cocycle along the edge");
    TetOrder pos = tet_order(gl, gr);
    std::array<PPoint, 4> pts{};
    pts[0] = Pl[0];
    pts[pos.q] = Pl[gl.iq];
    pts[pos.xl] = Pl[gl.ix];
    pts[pos.xr] = Pr[gr.ix];
    return modulus_at(pts, 0, pos.q);
}

SurfaceCocycle sample_cocycle(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    cplx p, q;
    do {
        p = cplx(nd(rng), nd(rng));
        q = cplx(nd(rng), nd(rng));
    } while (std::abs(p - q) < 0.5 || std::abs(p) < 0.3 || std::abs(q) < 0.3);
    cplx lam = std::exp(cplx(0.4 * nd(rng), 0.8 * nd(rng)));
    cplx mu = std::exp(cplx(0.4 * nd(rng), 0.8 * nd(rng)));
    Psl2 M{p, q, 1.0, 1.0};
    Psl2 Mi = M.inverse();
    Psl2 A = M * Psl2{lam, 0.0, 0.0, 1.0 / lam} * Mi;
    Psl2 B = M * Psl2{mu, 0.0, 0.0, 1.0 / mu} * Mi;
    return {A, B, A * B};
}

const SurfaceLoop LOOP_A = {{0, 'b'}, {1, 'd'}};
const SurfaceLoop LOOP_B = {{0, 'd'}, {1, 'a'}};

namespace {

// Matrix sending p1 -> 0, p2 -> 1, p3 -> inf.
Psl2 to01inf(const PPoint& p1, const PPoint& p2, const PPoint& p3) {
    cplx d23 = det2(p2, p3), d21 = det2(p2, p1);
    return {p1.y * d23, -p1.x * d23, p3.y * d21, -p3.x * d21};
}

Psl2 mobius_from_pairs(const std::array<PPoint, 3>& src, const std::array<PPoint, 3>& dst) {
    Psl2 A = to01inf(src[0], src[1], src[2]);
    Psl2 B = to01inf(dst[0], dst[1], dst[2]);
    return B.inverse() * A;
}

// Fit the Mobius map z -> f(z) from three samples.
template <typename F>
Psl2 mobius_fit(F&& f) {
    const cplx zs[3] = {cplx(0.3, 0.1), cplx(1.1, -0.7), cplx(-0.8, 0.9)};
    std::array<PPoint, 3> src{ppoint(zs[0]), ppoint(zs[1]), ppoint(zs[2])};
    std::array<PPoint, 3> dst{f(zs[0]), f(zs[1]), f(zs[2])};
    return mobius_from_pairs(src, dst);
}

// Place the fourth vertex so that the tetrahedron's modulus at the edge
// (0, q_pos) equals the target parameter.
PPoint solve_fourth(std::array<PPoint, 4> pts, int unk_idx, int q_pos, cplx target) {
    Psl2 M = mobius_fit([&](cplx zz) {
        std::array<PPoint, 4> p = pts;
        p[unk_idx] = ppoint(zz);
        return ppoint(modulus_at(p, 0, q_pos));
    });
    return apply(M.inverse(), ppoint(target));
}

}  // namespace

Psl2 holonomy_from_parameters(const std::map<char, cplx>& params, const SurfaceLoop& loop) {
    std::array<PPoint, 3> init{ppoint(0.0), ppoint_inf(), ppoint(-1.0)};
    std::array<PPoint, 3> pos_cur = init;
    int cur_tri = loop.empty() ? 0 : loop.front().first;
    for (const auto& [tri, cls] : loop) {
        if (tri != cur_tri) throw std::invalid_argument("holonomy: loop leaves the wrong triangle");
        EdgeSides es = edge_sides(cls);
        GermComb gl = germ_comb(es.left.tri, es.left.slot);
        GermComb gr = germ_comb(es.right.tri, es.right.slot);
        TetOrder pos = tet_order(gl, gr);
        const bool from_left = (tri == es.left.tri);
        const GermComb& gc = from_left ? gl : gr;
        const GermComb& go = from_left ? gr : gl;
        int other_tri = from_left ? es.right.tri : es.left.tri;
        int role_cur = from_left ? pos.xl : pos.xr;
        int role_o = from_left ? pos.xr : pos.xl;

        std::array<PPoint, 4> pts{};
        pts[0] = pos_cur[gc.seq[0]];
        pts[pos.q] = pos_cur[gc.seq[gc.iq]];
        pts[role_cur] = pos_cur[gc.seq[gc.ix]];
        PPoint sol = solve_fourth(pts, role_o, pos.q, params.at(cls));

        std::array<PPoint, 3> new_pos{};
        new_pos[go.seq[0]] = pts[0];
        new_pos[go.seq[go.iq]] = pts[pos.q];
        new_pos[go.seq[go.ix]] = sol;
        pos_cur = new_pos;
        cur_tri = other_tri;
    }
    return mobius_from_pairs(init, pos_cur);
}

}  // namespace qhg
