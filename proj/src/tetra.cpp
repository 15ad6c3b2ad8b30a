#include "qhg/tetra.hpp"

#include <cmath>
#include <stdexcept>

namespace qhg {

int moduli_index(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
    if ((a == 1 && b == 2) || (a == 0 && b == 3)) return 1;
    if ((a == 0 && b == 2) || (a == 1 && b == 3)) return 2;
    throw std::invalid_argument("moduli_index: not an edge of a tetrahedron");
}

ModuliTriple moduli_from_w0(cplx w0) {
    if (std::abs(w0) < 1e-14 || std::abs(w0 - 1.0) < 1e-14)
        throw std::invalid_argument("moduli_from_w0: degenerate modulus");
    return ModuliTriple{w0, 1.0 / (1.0 - w0), 1.0 - 1.0 / w0};
}

FlatChargedTet::FlatChargedTet(cplx w0, std::array<int, 3> f_, std::array<int, 3> c_,
                               int b_sign)
    : w(moduli_from_w0(w0)), f(f_), c(c_) {
    if (b_sign != 1 && b_sign != -1)
        throw std::invalid_argument("FlatChargedTet: b_sign must be +1 or -1");
    branching.b_sign = b_sign;
    double im = std::imag(w0);
    star_w = im > 0 ? +1 : (im < 0 ? -1 : 0);
}

std::array<cplx, 3> log_branch(const FlatChargedTet& t) {
    std::array<cplx, 3> l;
    for (int j = 0; j < 3; ++j)
        l[j] = principal_log(t.w[j]) + I * PI * static_cast<double>(t.f[j]);
    return l;
}

std::array<cplx, 3> quantum_log_branch(const FlatChargedTet& t, const LevelN& N) {
    std::array<cplx, 3> l;
    for (int j = 0; j < 3; ++j)
        l[j] = principal_log(t.w[j]) +
               I * PI * static_cast<double>(N.n + 1) *
                   static_cast<double>(t.f[j] - t.branching.b_sign * t.c[j]);
    return l;
}

std::array<cplx, 3> w_prime(const FlatChargedTet& t, const LevelN& N) {
    auto l = quantum_log_branch(t, N);
    std::array<cplx, 3> wp;
    for (int j = 0; j < 3; ++j) wp[j] = std::exp(l[j] / static_cast<double>(N.n));
    return wp;
}

}  // namespace qhg
