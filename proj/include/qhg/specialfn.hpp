#pragma once
// Complex special functions used by the dilogarithm tensors: principal
// logarithm, N-th roots, the cyclic product g and its normalization h,
// omega factors, the [x] bracket, the extended Rogers dilogarithm and the
// Lobachevsky function.

#include <complex>
#include <stdexcept>
#include <vector>

namespace qhg {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;
inline const cplx I{0.0, 1.0};

// Odd level N = 2m+1 with its primitive root of unity.
struct LevelN {
    int n;
    int m;
    cplx zeta;

    explicit LevelN(int n_);
    // zeta^k for any integer k (reduced mod n).
    cplx zeta_pow(long long k) const;
};

// Principal logarithm with Im in (-pi, pi].
cplx principal_log(cplx z);

// exp(principal_log(z)/N), with 0 -> 0.
cplx nth_root(cplx z, const LevelN& N);

// g(x) = prod_{j=1}^{N-1} (1 - x zeta^{-j})^{j/N}, fractional powers via
// the principal branch.
cplx g_func(cplx x, const LevelN& N);

// h(x) = g(x)/g(1).
cplx h_func(cplx x, const LevelN& N);

// omega(u,v|n) = prod_{j=1}^{n mod N} v/(1 - u zeta^j); requires
// u^N + v^N = 1 (checked), periodic in n with period N.
cplx omega(cplx u, cplx v, long long n, const LevelN& N);

// [x] = (1 - x^N) / (N (1 - x)), with [1] = 1.
cplx bracket(cplx x, const LevelN& N);

// Extended Rogers dilogarithm R(w0; f0, f1).  The charge-free part R0(w) =
// Li2(w) + (1/2) log(w) log(1-w) - pi^2/6 is computed by adaptive quadrature
// of -pi^2/6 - (1/2) int_0^w (log t/(1-t) + log(1-t)/t) dt along a straight
// segment (with a detour through i|w| if the segment grazes t=1); the
// flattening enters through the regularized correction
// (i pi / 2)(f0 log(1-w0) + f1 log(w0)).
cplx rogers_extended(cplx w0, int f0, int f1);

// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt, by
// adaptive quadrature; odd and pi-periodic.
double lobachevsky(double theta);

// Series oracle for Lambda: (1/2) sum_{n>=1} sin(2 n theta)/n^2.
double lobachevsky_series(double theta, int terms = 200000);

}  // namespace qhg
