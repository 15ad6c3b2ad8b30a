#include "qhg/fig8.hpp"

#include <cmath>
#include <stdexcept>

namespace qhg {

namespace {

ModuliTriple triple_from_slot2(cplx v2) {
    cplx v0 = 1.0 / (1.0 - v2);
    ModuliTriple t = moduli_from_w0(v0);
    return t;  // (v0, 1/(1-v0), v2) since the cycle closes
}

}  // namespace

Fig8Point fig8_point(cplx w2, int branch) {
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("fig8_point: branch must be +1 or -1");
    Fig8Point p;
    p.w2 = w2;
    p.branch = branch;
    p.w = triple_from_slot2(w2);
    cplx rad = std::sqrt(0.25 + 1.0 / (w2 * (w2 - 1.0)));
    cplx z2 = 0.5 + static_cast<double>(branch) * rad;
    p.z = triple_from_slot2(z2);
    return p;
}

Fig8Point fig8_complete() {
    // At the complete structure the radicand sits exactly on the branch
    // cut of the square root; build the point directly on the -1 sheet,
    // where z2 = conj(w2) = e^{-i pi/3}.
    cplx w2 = std::exp(I * PI / 3.0);
    Fig8Point p;
    p.w2 = w2;
    p.branch = -1;
    p.w = triple_from_slot2(w2);
    p.z = triple_from_slot2(std::conj(w2));
    return p;
}

cplx fig8_edge_relation(const Fig8Point& p) {
    return p.w[1] * p.w[2] * p.w[2] / (p.z[0] * p.z[0] * p.z[1]) - 1.0;
}

Mesh build_fig8_mesh(const Fig8Point& p, const IntTriples& f, const IntTriples& c) {
    if (f.size() != 2 || c.size() != 2)
        throw std::invalid_argument("build_fig8_mesh: two decoration triples required");
    std::vector<FlatChargedTet> tets;
    tets.emplace_back(p.w[0], f[0], c[0], +1);
    tets.emplace_back(p.z[0], f[1], c[1], -1);
    // Face i of Delta+ is glued to face pi(i) of Delta-, order-preserving
    // on the face vertices, with pi = (2,3,0,1).
    static const int kPi[4] = {2, 3, 0, 1};
    std::vector<Gluing> gl;
    for (int i = 0; i < 4; ++i) gl.push_back({0, i, 1, kPi[i], {0, 1, 2}});
    return Mesh(std::move(tets), std::move(gl));
}

Mesh build_fig8_complete_mesh() {
    return build_fig8_mesh(fig8_complete(), {{{0, -1, 0}}, {{0, 1, 0}}},
                           {{{0, 1, 0}}, {{0, 1, 0}}});
}

NormalPath fig8_meridian() {
    return {{{0, 0, 1, 3}, {1, 0, 1, 3}}};
}

NormalPath fig8_longitude() {
    return {{{0, 0, 1, 2},
             {1, 1, 0, 3},
             {0, 2, 1, 3},
             {1, 3, 1, 2},
             {0, 3, 0, 1},
             {1, 2, 3, 1},
             {0, 1, 3, 0},
             {1, 0, 2, 3}}};
}

NormalPath fig8_longitude_reversed() {
    return {{{1, 0, 3, 2},
             {0, 1, 0, 3},
             {1, 2, 1, 3},
             {0, 3, 1, 0},
             {1, 3, 2, 1},
             {0, 2, 3, 1},
             {1, 1, 3, 0},
             {0, 0, 2, 1}}};
}

std::pair<std::array<int, 3>, std::array<int, 3>> standard_flattening(int k_m, int k_l,
                                                                      int f0p) {
    if (k_l % 2 != 0)
        throw std::invalid_argument("standard_flattening: longitude weight must be even");
    std::array<int, 3> fp = {f0p, k_l / 2 - 1 - 2 * f0p, f0p - k_l / 2};
    std::array<int, 3> fm = {k_m - f0p, 2 * f0p - k_l / 2 - 2 * k_m + 1,
                             k_m - f0p + k_l / 2};
    return {fp, fm};
}

std::pair<std::array<int, 3>, std::array<int, 3>> surgery_flattening(int p, int q, int r,
                                                                     int s, int f0p) {
    if (p * s - q * r != 1)
        throw std::invalid_argument("surgery_flattening: ps - qr must equal 1");
    return standard_flattening(-2 * s, 2 * r, f0p);
}

cplx s_sum(cplx w0p, cplx w1p, const LevelN& N) {
    cplx tot = 1.0, prod = 1.0;
    for (int b = 1; b < N.n; ++b) {
        cplx den = 1.0 - w0p * N.zeta_pow(b);
        if (std::abs(den) < 1e-14) throw std::domain_error("s_sum: pole in the summand");
        prod *= 1.0 / (w1p * den);
        tot += N.zeta_pow(static_cast<long long>(b) * b) * prod;
    }
    return tot;
}

cplx closed_form(const LevelN& N, const FlatChargedTet& plus, const FlatChargedTet& minus) {
    if (N.n == 1) return r1_scalar(plus) * r1_scalar(minus);
    auto wp = w_prime(plus, N);
    auto zp = w_prime(minus, N);
    cplx pref = std::pow(std::pow(wp[0], -plus.c[1]) * std::pow(wp[1], plus.c[0]) *
                             std::pow(zp[0], -minus.c[1]) * std::pow(zp[1], minus.c[0]),
                         0.5 * (N.n - 1));
    double g1sq = std::norm(g_func(1.0, N));
    cplx gfac = std::conj(g_func(std::conj(zp[0]), N)) * g_func(wp[0], N) / g1sq;
    return static_cast<double>(N.n) * static_cast<double>(N.n) * pref * gfac *
           s_sum(wp[0], wp[1], N) * std::conj(s_sum(std::conj(zp[0]), std::conj(zp[1]), N));
}

cplx dehn_filled_value(const LevelN& N, int p, int q, int r, int s, const Fig8Point& pt) {
    if (N.n - 2 * s < 0)
        throw std::invalid_argument("dehn_filled_value: requires N - 2s >= 0");
    auto [fp, fm] = surgery_flattening(p, q, r, s, 0);
    FlatChargedTet plus(pt.w[0], fp, {0, 1, 0}, +1);
    FlatChargedTet minus(pt.z[0], fm, {0, 1, 0}, -1);
    auto wp = w_prime(plus, N);
    auto zp = w_prime(minus, N);
    cplx pref = std::pow(std::pow(wp[0], -plus.c[1]) * std::pow(wp[1], plus.c[0]) *
                             std::pow(zp[0], -minus.c[1]) * std::pow(zp[1], minus.c[0]),
                         0.5 * (N.n - 1));
    double g1sq = std::norm(g_func(1.0, N));
    cplx gfac = std::conj(g_func(std::conj(zp[0]), N)) * g_func(wp[0], N) / g1sq;

    cplx zc0 = std::conj(zp[0]), zc1inv = std::conj(1.0 / zp[1]);
    const long long m = N.m;
    cplx total = 0.0;
    for (long long a = 0; a < N.n; ++a)
        for (long long b = 0; b < N.n; ++b) {
            cplx term = N.zeta_pow(b * b - a * a) * omega(wp[0], 1.0 / wp[1], N.n - b, N) *
                        std::conj(omega(zc0, zc1inv, a, N)) *
                        N.zeta_pow(r * (N.n - b) * (m + 1));
            for (long long j = 1; j <= N.n - 2 * s; ++j) {
                cplx den = 1.0 - std::conj(zp[0]) * N.zeta_pow(j + a);
                if (std::abs(den) < 1e-14)
                    throw std::domain_error("dehn_filled_value: pole in the summand");
                term *= zc1inv * N.zeta_pow(-4 * s * a * (m + 1)) / den;
            }
            total += term;
        }
    return static_cast<double>(N.n) * static_cast<double>(N.n) * pref * gfac * total;
}

namespace {

// p log mu(m) + q log mu(l) - 2 pi i, with mu(m) = z2 w2 and
// mu(l) = z0^2 z2^{-2} expressed through the raw path logs.
cplx dehn_residual(int p, int q, cplx w2, int branch) {
    Fig8Point pt = fig8_point(w2, branch);
    cplx mer = principal_log(pt.z[2]) + principal_log(pt.w[2]);
    cplx lon = principal_log(pt.z[0]) - principal_log(pt.z[2]) + principal_log(pt.w[2]) -
               principal_log(pt.w[0]);
    return static_cast<double>(p) * mer + static_cast<double>(q) * lon - 2.0 * PI * I;
}

}  // namespace

std::optional<Fig8Point> solve_dehn_point(int p, int q) {
    const cplx base = std::exp(I * PI / 3.0);
    const double scales[] = {1.0, 1.3, 0.7};
    const cplx offsets[] = {cplx(0.001, 0.001), cplx(0.2, 0.0),  cplx(-0.2, 0.0),
                            cplx(0.0, 0.3),     cplx(0.0, -0.25), cplx(0.4, 0.4)};
    for (int branch : {+1, -1}) {
        for (double sc : scales)
            for (cplx off : offsets) {
                cplx w = base * sc + off;
                bool bad = false;
                for (int it = 0; it < 60 && !bad; ++it) {
                    cplx F;
                    try {
                        F = dehn_residual(p, q, w, branch);
                    } catch (const std::exception&) {
                        bad = true;
                        break;
                    }
                    if (std::abs(F) < 1e-12) {
                        Fig8Point pt = fig8_point(w, branch);
                        if (std::abs(fig8_edge_relation(pt)) < 1e-8) return pt;
                        bad = true;
                        break;
                    }
                    const double h = 1e-7;
                    cplx dF;
                    try {
                        dF = (dehn_residual(p, q, w + h, branch) -
                              dehn_residual(p, q, w - h, branch)) /
                             (2.0 * h);
                    } catch (const std::exception&) {
                        bad = true;
                        break;
                    }
                    if (std::abs(dF) < 1e-14) {
                        bad = true;
                        break;
                    }
                    cplx step = -F / dF;
                    double lambda = 1.0;
                    while (lambda > 1e-4) {
                        bool ok = true;
                        cplx Fn;
                        try {
                            Fn = dehn_residual(p, q, w + lambda * step, branch);
                        } catch (const std::exception&) {
                            ok = false;
                        }
                        if (ok && std::abs(Fn) < std::abs(F)) break;
                        lambda *= 0.5;
                    }
                    if (lambda <= 1e-4) {
                        bad = true;
                        break;
                    }
                    w += lambda * step;
                }
            }
    }
    return std::nullopt;
}

PhaseWitness fig8_crosscheck(const LevelN& N, double tol) {
    Mesh mesh = build_fig8_complete_mesh();
    LTensor engine = trace_tensor(mesh, N);
    cplx cf = closed_form(N, mesh.tets()[0], mesh.tets()[1]) /
              (static_cast<double>(N.n) * static_cast<double>(N.n));
    LTensor ref;
    ref.n = N.n;
    ref.data = {cf};
    LTensor eng;
    eng.n = N.n;
    eng.data = {engine.value()};
    return eq_mod_n(eng, ref, N, tol);
}

}  // namespace qhg
