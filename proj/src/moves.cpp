#include "qhg/moves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qhg/characters.hpp"
#include "qhg/decorate.hpp"
#include "qhg/latsolve.hpp"

namespace qhg {

std::array<cplx, 3> two_three_moduli(cplx x, cplx y) {
    std::array<cplx, 3> out = {y / x, y * (1.0 - x) / (x * (1.0 - y)),
                               (1.0 - x) / (1.0 - y)};
    for (cplx v : out)
        if (std::abs(v) < 1e-10 || std::abs(v - 1.0) < 1e-10)
            throw std::domain_error("two_three_moduli: degenerate output modulus");
    return out;
}

namespace {

// The five vertices of the bipyramid, moved by a fixed generic Mobius map
// so that all of them are finite.
std::array<cplx, 5> five_points(cplx x, cplx y) {
    const cplx b(0.3, 0.1), d(2.7, -1.3);
    auto mob = [&](cplx z) { return (z + b) / (z + d); };
    std::array<cplx, 5> u{};
    u[0] = mob(0.0);
    u[1] = mob(1.0 - x);
    u[2] = mob(1.0);
    u[3] = mob(1.0 / (1.0 - y));
    u[4] = cplx(1.0, 0.0);  // image of infinity: a/c = 1
    return u;
}

FlatChargedTet tet_from_points(const std::array<cplx, 4>& u, int b_sign,
                               const std::array<int, 3>& c) {
    cplx w0 = cross_ratio(ppoint(u[0]), ppoint(u[1]), ppoint(u[2]), ppoint(u[3]));
    for (cplx v : {w0, 1.0 / (1.0 - w0), 1.0 - 1.0 / w0})
        if (std::abs(v) < 1e-4 || std::abs(v - 1.0) < 1e-4)
            throw std::domain_error("pentagon: nearly degenerate tetrahedron");
    ModuliTriple w = moduli_from_w0(w0);
    auto l = canonical_flattening(u[0], u[1], u[2], u[3]);
    return FlatChargedTet(w0, flattening_from_logs(w, l), c, b_sign);
}

// Edge instances keyed by global vertex pair: (tet index, moduli index).
using EdgeMap = std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>;

EdgeMap edge_map(const std::vector<std::array<int, 4>>& verts) {
    EdgeMap em;
    for (size_t t = 0; t < verts.size(); ++t)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                auto key = std::minmax(verts[t][a], verts[t][b]);
                em[key].push_back({static_cast<int>(t), moduli_index(a, b)});
            }
    return em;
}

cplx total_L(const std::vector<FlatChargedTet>& tets,
             const std::vector<std::pair<int, int>>& germs) {
    cplx s = 0.0;
    for (auto [t, j] : germs)
        s += static_cast<double>(tets[t].branching.b_sign) *
             (principal_log(tets[t].w[j]) + I * PI * static_cast<double>(tets[t].f[j]));
    return s;
}

long long total_C(const std::vector<FlatChargedTet>& tets,
                  const std::vector<std::pair<int, int>>& germs) {
    long long s = 0;
    for (auto [t, j] : germs) s += tets[t].c[j];
    return s;
}

}  // namespace

PentagonSides pentagon_transit(cplx x, cplx y, int b_sign) {
    PentagonSides ps;
    ps.two_verts = {{0, 1, 2, 4}, {0, 2, 3, 4}};
    ps.three_verts = {{0, 1, 2, 3}, {1, 2, 3, 4}, {0, 1, 3, 4}};
    auto u = five_points(x, y);
    for (const auto& vs : ps.two_verts)
        ps.two_side.push_back(
            tet_from_points({u[vs[0]], u[vs[1]], u[vs[2]], u[vs[3]]}, b_sign, {0, 1, 0}));
    for (const auto& vs : ps.three_verts)
        ps.three_side.push_back(
            tet_from_points({u[vs[0]], u[vs[1]], u[vs[2]], u[vs[3]]}, b_sign, {0, 0, 1}));

    // The canonical flattenings match the two sides only up to integer
    // multiples of i pi on the edges; solve for an exact correction of the
    // three-side flattenings (per-tet sums preserved, common edge totals
    // matched, central edge total zero).
    EdgeMap em2 = edge_map(ps.two_verts), em3 = edge_map(ps.three_verts);
    {
        imat A;
        ivec rhs;
        for (int t = 0; t < 3; ++t) {
            ivec row(9, 0);
            row[3 * t] = row[3 * t + 1] = row[3 * t + 2] = 1;
            A.push_back(row);
            rhs.push_back(0);
        }
        for (const auto& [key, germs3] : em3) {
            ivec row(9, 0);
            for (auto [t, j] : germs3) row[3 * t + j] += b_sign;
            cplx l3 = total_L(ps.three_side, germs3);
            cplx target = em2.count(key) ? total_L(ps.two_side, em2.at(key)) - l3 : -l3;
            double k = (target / (I * PI)).real();
            long long ki = std::llround(k);
            if (std::abs(target - I * PI * double(ki)) > 1e-7)
                throw std::logic_error("pentagon: edge defect is not an i pi multiple");
            A.push_back(row);
            rhs.push_back(ki);
        }
        IntSolution df = solve_integer(A, rhs, 9);
        if (!df.feasible)
            throw std::logic_error("pentagon: flattening correction system infeasible");
        for (int t = 0; t < 3; ++t)
            for (int j = 0; j < 3; ++j)
                ps.three_side[t].f[j] += static_cast<int>(df.x[3 * t + j]);
    }
    for (const auto& [key, germs2] : em2) {
        cplx l2 = total_L(ps.two_side, germs2);
        cplx l3 = total_L(ps.three_side, em3.at(key));
        if (std::abs(l2 - l3) > 1e-8)
            throw std::logic_error("pentagon: corrected flattenings still disagree");
    }
    if (std::abs(total_L(ps.three_side, em3.at({1, 3}))) > 1e-8)
        throw std::logic_error("pentagon: central edge log-branch total not zero");

    // Solve the three-side charges: per-tet sum 1; edge totals matched to
    // the two side; central edge total 2.
    imat A;
    ivec rhs;
    for (int t = 0; t < 3; ++t) {
        ivec row(9, 0);
        row[3 * t] = row[3 * t + 1] = row[3 * t + 2] = 1;
        A.push_back(row);
        rhs.push_back(1);
    }
    for (const auto& [key, germs3] : em3) {
        ivec row(9, 0);
        for (auto [t, j] : germs3) row[3 * t + j] += 1;
        A.push_back(row);
        rhs.push_back(em2.count(key) ? total_C(ps.two_side, em2.at(key)) : 2);
    }
    IntSolution sol = solve_integer(A, rhs, 9);
    if (!sol.feasible) throw std::logic_error("pentagon: charge transit system infeasible");
    for (int t = 0; t < 3; ++t)
        ps.three_side[t].c = {static_cast<int>(sol.x[3 * t]), static_cast<int>(sol.x[3 * t + 1]),
                              static_cast<int>(sol.x[3 * t + 2])};
    return ps;
}

TransitResult two_three_transit(cplx x, cplx y, int b_sign) {
    PentagonSides ps = pentagon_transit(x, y, b_sign);
    return {ps.two_side, ps.three_side};
}

namespace {

LTensor side_tensor(const std::vector<FlatChargedTet>& tets,
                    const std::vector<std::array<int, 4>>& verts, const LevelN& N) {
    if (N.n == 1) {
        LTensor r;
        cplx v = 1.0;
        for (const auto& t : tets) v *= r1_scalar(t);
        r.data[0] = v;
        return r;
    }
    std::vector<LTensor> ts;
    for (size_t t = 0; t < tets.size(); ++t) {
        Tensor4 T = by_face(rn_tensor(tets[t], N), tets[t].branching.b_sign);
        LTensor lt;
        lt.n = N.n;
        for (int fc = 0; fc < 4; ++fc) {
            int mask = 0;
            for (int k = 0; k < 4; ++k)
                if (k != fc) mask |= 1 << verts[t][k];
            lt.labels.push_back(mask);
        }
        lt.data = std::move(T.a);
        ts.push_back(std::move(lt));
    }
    LTensor acc = ts[0];
    for (size_t i = 1; i < ts.size(); ++i) acc = contract_pair(acc, ts[i]);
    return sort_axes(self_trace(acc));
}

}  // namespace

PhaseWitness pentagon_check(cplx x, cplx y, const LevelN& N, int b_sign, double tol) {
    PentagonSides ps = pentagon_transit(x, y, b_sign);
    LTensor T2 = side_tensor(ps.two_side, ps.two_verts, N);
    LTensor T3 = side_tensor(ps.three_side, ps.three_verts, N);
    return eq_mod_n(T2, T3, N, tol);
}

ValidationReport bubble_constraints_check(const Mesh& before, const Mesh& after,
                                          const BubbleSpec& spec, double tol) {
    ValidationReport r;
    std::vector<long long> new_charges;
    for (int e : spec.new_edges) {
        double wres = std::abs(after.edge_total_modulus(e) - 1.0);
        if (wres > tol) r.violations.push_back({"new edge modulus product != 1", e, wres});
        double lres = std::abs(after.edge_total_log_branch(e));
        if (lres > tol) r.violations.push_back({"new edge log-branch total != 0", e, lres});
        new_charges.push_back(after.edge_total_charge(e));
    }
    std::sort(new_charges.begin(), new_charges.end());
    if (new_charges != std::vector<long long>{0, 0, 2})
        r.violations.push_back({"new edge charges are not (0,0,2)", spec.new_edges[0], 0.0});
    for (auto [eb, ea] : spec.common_edges) {
        double wres = std::abs(before.edge_total_modulus(eb) - after.edge_total_modulus(ea));
        if (wres > tol) r.violations.push_back({"common edge modulus changed", ea, wres});
        double lres =
            std::abs(before.edge_total_log_branch(eb) - after.edge_total_log_branch(ea));
        if (lres > tol) r.violations.push_back({"common edge log-branch changed", ea, lres});
        long long shift = (eb == spec.marked_before && ea == spec.marked_after) ? 2 : 0;
        long long diff = after.edge_total_charge(ea) - before.edge_total_charge(eb);
        if (diff != shift)
            r.violations.push_back({"common edge charge shift wrong", ea,
                                    static_cast<double>(diff - shift)});
    }
    return r;
}

}  // namespace qhg
