#include "qhg/decorate.hpp"

#include <cmath>
#include <stdexcept>

namespace qhg {

namespace {

// Round a value expected to be a (real) integer; nullopt if it is not.
std::optional<long long> near_integer(cplx q, double tol) {
    double r = std::round(q.real());
    if (std::abs(q - cplx(r, 0.0)) > tol) return std::nullopt;
    return static_cast<long long>(r);
}

struct System {
    imat A;
    ivec b;
    int cols;
};

// Rows shared by the flattening and charge problems: one per tet (sum of
// the triple) and one per interior edge class.  Edge coefficients are
// signed by *_b for flattenings, unsigned for charges.  Right-hand sides
// are filled by the carrier.
System base_system(const Mesh& m, WeightKind kind) {
    const int T = m.n_tets();
    System s;
    s.cols = 3 * T;
    for (int t = 0; t < T; ++t) {
        ivec row(s.cols, 0);
        row[3 * t] = row[3 * t + 1] = row[3 * t + 2] = 1;
        s.A.push_back(std::move(row));
    }
    for (int c = 0; c < m.n_edge_classes(); ++c) {
        if (!m.edge_interior(c)) continue;
        ivec row(s.cols, 0);
        for (const EdgeInstance& e : m.edge_members(c)) {
            int sign = (kind == WeightKind::charge) ? 1 : m.tets()[e.tet].branching.b_sign;
            row[3 * e.tet + moduli_index(e.a, e.b)] += sign;
        }
        s.A.push_back(std::move(row));
    }
    return s;
}

}  // namespace

ivec triples_to_vec(const IntTriples& t) {
    ivec v;
    v.reserve(3 * t.size());
    for (const auto& x : t) {
        v.push_back(x[0]);
        v.push_back(x[1]);
        v.push_back(x[2]);
    }
    return v;
}

IntTriples vec_to_triples(const ivec& v) {
    if (v.size() % 3 != 0) throw std::invalid_argument("vec_to_triples: size not 3T");
    IntTriples t(v.size() / 3);
    for (size_t i = 0; i < t.size(); ++i)
        t[i] = {static_cast<int>(v[3 * i]), static_cast<int>(v[3 * i + 1]),
                static_cast<int>(v[3 * i + 2])};
    return t;
}

std::optional<IntTriples> solve_flattening(const Mesh& m,
                                           const std::vector<PathConstraint>& constraints,
                                           double tol) {
    const int T = m.n_tets();
    System s = base_system(m, WeightKind::flattening);

    // Per-tet right-hand side: the integer making the log-branch sum zero.
    for (int t = 0; t < T; ++t) {
        cplx argsum = 0.0;
        for (int j = 0; j < 3; ++j) argsum += principal_log(m.tets()[t].w[j]);
        auto k = near_integer(-argsum / (I * PI), tol);
        if (!k) return std::nullopt;
        s.b.push_back(*k);
    }
    // Per interior edge: signed log sum must be an integer multiple of
    // i pi, cancelled by the flattenings.
    for (int c = 0; c < m.n_edge_classes(); ++c) {
        if (!m.edge_interior(c)) continue;
        cplx logsum = 0.0;
        for (const EdgeInstance& e : m.edge_members(c))
            logsum += static_cast<double>(m.tets()[e.tet].branching.b_sign) *
                      principal_log(m.tets()[e.tet].w[moduli_index(e.a, e.b)]);
        auto k = near_integer(-logsum / (I * PI), tol);
        if (!k) return std::nullopt;
        s.b.push_back(*k);
    }
    // Path-weight constraints.
    for (const PathConstraint& pc : constraints) {
        m.check_path(pc.path);
        ivec row(s.cols, 0);
        cplx logpart = 0.0;
        for (const PathStep& st : pc.path.steps) {
            auto [u, side] = step_side(m, st);
            const FlatChargedTet& t = m.tets()[st.tet];
            int j = moduli_index(st.vertex, u);
            row[3 * st.tet + j] += side * t.branching.b_sign;
            logpart += static_cast<double>(side * t.branching.b_sign) * principal_log(t.w[j]);
        }
        auto k = near_integer((pc.target - logpart) / (I * PI), tol);
        if (!k) return std::nullopt;
        s.A.push_back(std::move(row));
        s.b.push_back(*k);
    }

    IntSolution sol = solve_integer(s.A, s.b, s.cols);
    if (!sol.feasible) return std::nullopt;
    return vec_to_triples(sol.x);
}

std::optional<IntTriples> solve_charge(const Mesh& m) {
    System s = base_system(m, WeightKind::charge);
    for (int t = 0; t < m.n_tets(); ++t) s.b.push_back(1);
    for (int c = 0; c < m.n_edge_classes(); ++c) {
        if (!m.edge_interior(c)) continue;
        s.b.push_back(m.ham_edges().count(c) ? 0 : 2);
    }
    IntSolution sol = solve_integer(s.A, s.b, s.cols);
    if (!sol.feasible) return std::nullopt;
    return vec_to_triples(sol.x);
}

std::vector<ivec> lattice_generators(const Mesh& m, WeightKind kind) {
    System s = base_system(m, kind);
    s.b.assign(s.A.size(), 0);
    return solve_integer(s.A, s.b, s.cols).kernel;
}

void apply_flattening(Mesh& m, const IntTriples& f) {
    if (static_cast<int>(f.size()) != m.n_tets())
        throw std::invalid_argument("apply_flattening: size mismatch");
    for (int t = 0; t < m.n_tets(); ++t) m.tets()[t].f = f[t];
}

void apply_charge(Mesh& m, const IntTriples& c) {
    if (static_cast<int>(c.size()) != m.n_tets())
        throw std::invalid_argument("apply_charge: size mismatch");
    for (int t = 0; t < m.n_tets(); ++t) m.tets()[t].c = c[t];
}

}  // namespace qhg
