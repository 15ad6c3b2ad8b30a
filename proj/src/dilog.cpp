#include "qhg/dilog.hpp"

#include <cmath>
#include <stdexcept>

namespace qhg {

Tensor4 ln_tensor(cplx up, cplx vp, const LevelN& N) {
    const int n = N.n, m = N.m;
    Tensor4 T(n);
    cplx h = h_func(up, N);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            cplx phase = h * N.zeta_pow(static_cast<long long>(k) * j +
                                        static_cast<long long>(m + 1) * k * k);
            for (int i = 0; i < n; ++i) {
                int l = (i + j) % n;
                T.at(i, j, k, l) = phase * omega(up, vp, i - k, N);
            }
        }
    }
    return T;
}

Tensor4 ln_tensor_inv(cplx up, cplx vp, const LevelN& N) {
    const int n = N.n, m = N.m;
    Tensor4 T(n);
    cplx pref = bracket(up, N) / h_func(up, N);
    cplx up_shift = up / N.zeta;
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            cplx phase = pref * N.zeta_pow(-static_cast<long long>(i) * l -
                                           static_cast<long long>(m + 1) * i * i);
            for (int k = 0; k < n; ++k) {
                int j = (k + l) % n;
                T.at(i, j, k, l) = phase / omega(up_shift, vp, k - i, N);
            }
        }
    }
    return T;
}

Tensor4 compose(const Tensor4& A, const Tensor4& B) {
    if (A.n != B.n) throw std::invalid_argument("compose: size mismatch");
    const int n = A.n;
    Tensor4 C(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cplx s = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            s += A.at(i, j, a, b) * B.at(a, b, k, l);
                    C.at(i, j, k, l) = s;
                }
    return C;
}

double identity_defect(const Tensor4& T) {
    const int n = T.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cplx want = (i == k && j == l) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(T.at(i, j, k, l) - want));
                }
    return worst;
}

Tensor4 rn_tensor(const FlatChargedTet& t, const LevelN& N) {
    auto wp = w_prime(t, N);
    cplx base = std::pow(wp[0], -t.c[1]) * std::pow(wp[1], t.c[0]);
    cplx pref = std::pow(base, 0.5 * (N.n - 1));
    Tensor4 T = (t.branching.b_sign > 0) ? ln_tensor(wp[0], 1.0 / wp[1], N)
                                         : ln_tensor_inv(wp[0], 1.0 / wp[1], N);
    for (auto& x : T.a) x *= pref;
    return T;
}

cplx r1_scalar(const FlatChargedTet& t) {
    cplx R = rogers_extended(t.w[0], t.f[0], t.f[1]);
    return std::exp(static_cast<double>(t.branching.b_sign) * R / (I * PI));
}

std::array<int, 4> slot_faces(int b_sign) {
    // Slot order (i, j, k, l); faces delta_a are opposite vertex a.
    if (b_sign > 0) return {2, 0, 3, 1};
    return {3, 1, 2, 0};
}

Tensor4 by_face(const Tensor4& T, int b_sign) {
    auto fm = slot_faces(b_sign);
    const int n = T.n;
    Tensor4 B(n);
    std::array<int, 4> x{};
    for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < n; ++x[1])
            for (x[2] = 0; x[2] < n; ++x[2])
                for (x[3] = 0; x[3] < n; ++x[3])
                    B.at(x[0], x[1], x[2], x[3]) =
                        T.at(x[fm[0]], x[fm[1]], x[fm[2]], x[fm[3]]);
    return B;
}

}  // namespace qhg
