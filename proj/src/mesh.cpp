#include "qhg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qhg {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Index of edge {a,b} (a<b) among the 6 edges of a tetrahedron.
int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    int r = (a >= 0 && b <= 3 && a != b) ? idx[a][b] : -1;
    if (r < 0) throw std::invalid_argument("pair_index: not an edge");
    return r;
}

const std::array<std::array<int, 2>, 6> kPairOf = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

std::array<int, 3> face_verts(int f) {
    std::array<int, 3> v{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != f) v[k++] = i;
    return v;
}

int perm_sign4(const std::array<int, 4>& p) {
    int s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

Mesh::Mesh(std::vector<FlatChargedTet> tets, std::vector<Gluing> gluings,
           std::set<int> ham_edges)
    : tets_(std::move(tets)), gluings_(std::move(gluings)), ham_(std::move(ham_edges)) {
    derive();
    for (int h : ham_)
        if (h < 0 || h >= n_edge_classes_)
            throw std::invalid_argument("Mesh: Hamiltonian edge class out of range");
}

void Mesh::derive() {
    const int T = n_tets();
    face_gluing_.assign(T, {-1, -1, -1, -1});
    for (size_t gi = 0; gi < gluings_.size(); ++gi) {
        const Gluing& g = gluings_[gi];
        if (g.tet_a < 0 || g.tet_a >= T || g.tet_b < 0 || g.tet_b >= T ||
            g.face_a < 0 || g.face_a > 3 || g.face_b < 0 || g.face_b > 3)
            throw std::invalid_argument("Mesh: gluing indices out of range");
        if (g.tet_a == g.tet_b && g.face_a == g.face_b)
            throw std::invalid_argument("Mesh: face glued to itself");
        std::array<int, 3> seen{0, 0, 0};
        for (int k = 0; k < 3; ++k) {
            if (g.perm[k] < 0 || g.perm[k] > 2)
                throw std::invalid_argument("Mesh: invalid vertex permutation");
            seen[g.perm[k]]++;
        }
        if (seen != std::array<int, 3>{1, 1, 1})
            throw std::invalid_argument("Mesh: vertex permutation not a bijection");
        if (face_gluing_[g.tet_a][g.face_a] != -1 || face_gluing_[g.tet_b][g.face_b] != -1)
            throw std::invalid_argument("Mesh: face glued more than once");
        face_gluing_[g.tet_a][g.face_a] = static_cast<int>(gi);
        face_gluing_[g.tet_b][g.face_b] = static_cast<int>(gi);
    }

    UnionFind euf(6 * T), vuf(4 * T);
    for (const Gluing& g : gluings_) {
        auto A = face_verts(g.face_a), B = face_verts(g.face_b);
        for (int k = 0; k < 3; ++k) vuf.unite(4 * g.tet_a + A[k], 4 * g.tet_b + B[g.perm[k]]);
        for (int k1 = 0; k1 < 3; ++k1)
            for (int k2 = k1 + 1; k2 < 3; ++k2)
                euf.unite(6 * g.tet_a + pair_index(A[k1], A[k2]),
                          6 * g.tet_b + pair_index(B[g.perm[k1]], B[g.perm[k2]]));
    }

    // Number classes deterministically by their lowest member.
    edge_class_of_.assign(6 * T, -1);
    n_edge_classes_ = 0;
    for (int i = 0; i < 6 * T; ++i) {
        int r = euf.find(i);
        if (edge_class_of_[r] == -1) edge_class_of_[r] = n_edge_classes_++;
        edge_class_of_[i] = edge_class_of_[r];
    }
    edge_members_.assign(n_edge_classes_, {});
    for (int i = 0; i < 6 * T; ++i) {
        auto [a, b] = kPairOf[i % 6];
        edge_members_[edge_class_of_[i]].push_back(EdgeInstance{i / 6, a, b});
    }
    edge_interior_.assign(n_edge_classes_, true);
    for (int c = 0; c < n_edge_classes_; ++c)
        for (const EdgeInstance& e : edge_members_[c])
            for (int f = 0; f < 4; ++f)
                if (f != e.a && f != e.b && !face_glued(e.tet, f)) edge_interior_[c] = false;

    vertex_class_of_.assign(4 * T, -1);
    n_vertex_classes_ = 0;
    for (int i = 0; i < 4 * T; ++i) {
        int r = vuf.find(i);
        if (vertex_class_of_[r] == -1) vertex_class_of_[r] = n_vertex_classes_++;
        vertex_class_of_[i] = vertex_class_of_[r];
    }
}

bool Mesh::face_glued(int tet, int face) const { return face_gluing_[tet][face] != -1; }

std::array<int, 3> Mesh::glue_vertex(int tet, int face, int v) const {
    int gi = face_gluing_[tet][face];
    if (gi < 0) throw std::invalid_argument("glue_vertex: face not glued");
    const Gluing& g = gluings_[gi];
    if (g.tet_a == tet && g.face_a == face) {
        auto A = face_verts(face), B = face_verts(g.face_b);
        for (int k = 0; k < 3; ++k)
            if (A[k] == v) return {g.tet_b, g.face_b, B[g.perm[k]]};
    } else {
        auto B = face_verts(face), A = face_verts(g.face_a);
        for (int k = 0; k < 3; ++k)
            if (B[g.perm[k]] == v) return {g.tet_a, g.face_a, A[k]};
    }
    throw std::invalid_argument("glue_vertex: vertex not on face");
}

int Mesh::edge_class(int tet, int a, int b) const {
    return edge_class_of_[6 * tet + pair_index(a, b)];
}

const std::vector<EdgeInstance>& Mesh::edge_members(int cls) const {
    return edge_members_.at(cls);
}

bool Mesh::edge_interior(int cls) const { return edge_interior_.at(cls); }

int Mesh::vertex_class(int tet, int v) const { return vertex_class_of_[4 * tet + v]; }

cplx Mesh::edge_total_modulus(int cls) const {
    cplx w = 1.0;
    for (const EdgeInstance& e : edge_members_[cls]) {
        cplx wj = tets_[e.tet].w[moduli_index(e.a, e.b)];
        w *= (tets_[e.tet].branching.b_sign > 0) ? wj : 1.0 / wj;
    }
    return w;
}

cplx Mesh::edge_total_log_branch(int cls) const {
    cplx L = 0.0;
    for (const EdgeInstance& e : edge_members_[cls]) {
        const FlatChargedTet& t = tets_[e.tet];
        int j = moduli_index(e.a, e.b);
        L += static_cast<double>(t.branching.b_sign) *
             (principal_log(t.w[j]) + I * PI * static_cast<double>(t.f[j]));
    }
    return L;
}

long long Mesh::edge_total_charge(int cls) const {
    long long C = 0;
    for (const EdgeInstance& e : edge_members_[cls])
        C += tets_[e.tet].c[moduli_index(e.a, e.b)];
    return C;
}

std::vector<VertexClassInfo> Mesh::classify_vertices() const {
    const int T = n_tets();
    // Link-vertex germs (t, v, u) identified through the gluings.
    UnionFind guf(16 * T);
    auto gid = [](int t, int v, int u) { return 16 * t + 4 * v + u; };
    for (const Gluing& g : gluings_) {
        auto A = face_verts(g.face_a), B = face_verts(g.face_b);
        for (int k1 = 0; k1 < 3; ++k1)
            for (int k2 = 0; k2 < 3; ++k2)
                if (k1 != k2)
                    guf.unite(gid(g.tet_a, A[k1], A[k2]),
                              gid(g.tet_b, B[g.perm[k1]], B[g.perm[k2]]));
    }
    std::vector<VertexClassInfo> out(n_vertex_classes_);
    std::vector<std::set<int>> germ_roots(n_vertex_classes_);
    std::vector<int> glued_sides(n_vertex_classes_, 0), free_sides(n_vertex_classes_, 0);
    for (int t = 0; t < T; ++t)
        for (int v = 0; v < 4; ++v) {
            int vc = vertex_class(t, v);
            out[vc].corners++;
            for (int u = 0; u < 4; ++u)
                if (u != v) {
                    germ_roots[vc].insert(guf.find(gid(t, v, u)));
                    // Side of the corner triangle lying on face u.
                    (face_glued(t, u) ? glued_sides : free_sides)[vc]++;
                }
        }
    for (int vc = 0; vc < n_vertex_classes_; ++vc) {
        int F = out[vc].corners;
        int E = glued_sides[vc] / 2 + free_sides[vc];
        int V = static_cast<int>(germ_roots[vc].size());
        out[vc].closed = (free_sides[vc] == 0);
        out[vc].euler = V - E + F;
        if (!out[vc].closed)
            out[vc].kind = VertexKind::boundary;
        else if (out[vc].euler == 2)
            out[vc].kind = VertexKind::manifold;
        else if (out[vc].euler == 0)
            out[vc].kind = VertexKind::toroidal;
        else
            out[vc].kind = VertexKind::other;
    }
    return out;
}

ValidationReport Mesh::validate_I(double tol) const {
    ValidationReport r;
    for (int c = 0; c < n_edge_classes_; ++c) {
        if (!edge_interior_[c]) continue;
        double res = std::abs(edge_total_modulus(c) - 1.0);
        if (res > tol) r.violations.push_back({"edge modulus product != 1", c, res});
    }
    return r;
}

ValidationReport Mesh::validate_flattened(double tol) const {
    ValidationReport r;
    for (int c = 0; c < n_edge_classes_; ++c) {
        if (!edge_interior_[c]) continue;
        double res = std::abs(edge_total_log_branch(c));
        if (res > tol) r.violations.push_back({"edge log-branch total != 0", c, res});
    }
    return r;
}

ValidationReport Mesh::validate_charged() const {
    ValidationReport r;
    for (int c = 0; c < n_edge_classes_; ++c) {
        if (!edge_interior_[c]) continue;
        long long want = ham_.count(c) ? 0 : 2;
        long long got = edge_total_charge(c);
        if (got != want)
            r.violations.push_back(
                {"edge charge total != " + std::to_string(want), c,
                 static_cast<double>(got - want)});
    }
    return r;
}

std::array<int, 3> corner_cyclic(const Mesh& m, int t, int v) {
    auto fv = face_verts(v);
    std::array<int, 4> p{v, fv[0], fv[1], fv[2]};
    if (perm_sign4(p) * m.tets()[t].branching.b_sign < 0) std::swap(fv[1], fv[2]);
    return fv;
}

std::pair<int, int> step_side(const Mesh& m, const PathStep& s) {
    if (s.vertex < 0 || s.vertex > 3 || s.face_in == s.vertex || s.face_out == s.vertex ||
        s.face_in == s.face_out || s.face_in < 0 || s.face_in > 3 || s.face_out < 0 ||
        s.face_out > 3)
        throw std::invalid_argument("step_side: malformed path step");
    int u = 6 - s.vertex - s.face_in - s.face_out;
    auto cyc = corner_cyclic(m, s.tet, s.vertex);
    int i = 0;
    while (cyc[i] != s.face_in) ++i;
    int side = (cyc[(i + 1) % 3] == s.face_out) ? -1 : +1;
    return {u, side};
}

void Mesh::check_path(const NormalPath& p) const {
    if (p.steps.empty()) throw std::invalid_argument("path: empty");
    const int n = static_cast<int>(p.steps.size());
    for (int i = 0; i < n; ++i) {
        const PathStep& s = p.steps[i];
        if (s.tet < 0 || s.tet >= n_tets())
            throw std::invalid_argument("path: tet index out of range");
        step_side(*this, s);  // validates the local shape
        const PathStep& nx = p.steps[(i + 1) % n];
        auto [t2, f2, v2] = glue_vertex(s.tet, s.face_out, s.vertex);
        if (t2 != nx.tet || f2 != nx.face_in || v2 != nx.vertex)
            throw std::invalid_argument("path: steps not connected through gluings");
    }
}

cplx Mesh::path_weight(const NormalPath& p, WeightKind kind) const {
    check_path(p);
    cplx total = 0.0;
    for (const PathStep& s : p.steps) {
        auto [u, side] = step_side(*this, s);
        const FlatChargedTet& t = tets_[s.tet];
        int j = moduli_index(s.vertex, u);
        switch (kind) {
            case WeightKind::flattening:
                total += static_cast<double>(side * t.branching.b_sign) *
                         (principal_log(t.w[j]) + I * PI * static_cast<double>(t.f[j]));
                break;
            case WeightKind::charge:
                total += static_cast<double>(side * t.c[j]);
                break;
            case WeightKind::log_derivative:
                total += static_cast<double>(side * t.branching.b_sign) * principal_log(t.w[j]);
                break;
        }
    }
    return total;
}

}  // namespace qhg
