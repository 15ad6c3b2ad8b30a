#include "qhg/specialfn.hpp"

#include <cmath>

namespace qhg {

LevelN::LevelN(int n_) : n(n_), m((n_ - 1) / 2) {
    if (n < 1 || n % 2 == 0) throw std::domain_error("LevelN: n must be an odd positive integer");
    zeta = std::exp(2.0 * PI * I / static_cast<double>(n));
}

cplx LevelN::zeta_pow(long long k) const {
    long long r = k % n;
    if (r < 0) r += n;
    return std::exp(2.0 * PI * I * static_cast<double>(r) / static_cast<double>(n));
}

cplx principal_log(cplx z) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("principal_log: log of zero");
    cplx L = std::log(z);
    if (L.imag() <= -PI) L += cplx(0.0, 2.0 * PI);
    return L;
}

cplx nth_root(cplx z, const LevelN& N) {
    if (z == cplx(0.0, 0.0)) return {0.0, 0.0};
    return std::exp(principal_log(z) / static_cast<double>(N.n));
}

cplx g_func(cplx x, const LevelN& N) {
    cplx r{1.0, 0.0};
    for (int j = 1; j < N.n; ++j) {
        cplx base = 1.0 - x * N.zeta_pow(-j);
        if (base == cplx(0.0, 0.0)) return {0.0, 0.0};
        r *= std::exp(principal_log(base) * static_cast<double>(j) / static_cast<double>(N.n));
    }
    return r;
}

cplx h_func(cplx x, const LevelN& N) { return g_func(x, N) / g_func(cplx(1.0, 0.0), N); }

cplx omega(cplx u, cplx v, long long n, const LevelN& N) {
    cplx resid = std::pow(u, N.n) + std::pow(v, N.n) - 1.0;
    if (std::abs(resid) > 1e-6) throw std::domain_error("omega: u^N + v^N != 1");
    long long r = n % N.n;
    if (r < 0) r += N.n;
    cplx out{1.0, 0.0};
    for (long long j = 1; j <= r; ++j) {
        cplx den = 1.0 - u * N.zeta_pow(j);
        if (std::abs(den) < 1e-14) throw std::domain_error("omega: singular denominator");
        out *= v / den;
    }
    return out;
}

cplx bracket(cplx x, const LevelN& N) {
    if (std::abs(x - 1.0) < 1e-12) return {1.0, 0.0};
    return (1.0 - std::pow(x, N.n)) / (1.0 - x) / static_cast<double>(N.n);
}

namespace {

// Adaptive Gauss-Kronrod (7-15) quadrature for complex-valued integrands on
// a real parameter interval.
template <typename F>
cplx gk15(F&& f, double a, double b, double* err) {
    static const double xk[8] = {0.0, 0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
                                 0.7415311855993944, 0.8648644233597691, 0.9491079123427585,
                                 0.9914553711208126};
    static const double wk[8] = {0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
                                 0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
                                 0.0630920926299786, 0.0229353220105292};
    static const double wg[4] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                                 0.1294849661688697};
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fk[15];
    fk[7] = f(c);
    for (int i = 1; i < 8; ++i) {
        fk[7 - i] = f(c - h * xk[i]);
        fk[7 + i] = f(c + h * xk[i]);
    }
    cplx resk = wk[0] * fk[7];
    for (int i = 1; i < 8; ++i) resk += wk[i] * (fk[7 - i] + fk[7 + i]);
    cplx resg = wg[0] * fk[7];
    for (int i = 1; i < 4; ++i) resg += wg[i] * (fk[7 - 2 * i] + fk[7 + 2 * i]);
    resk *= h;
    resg *= h;
    *err = std::abs(resk - resg);
    return resk;
}

template <typename F>
cplx adaptive_quad(F&& f, double a, double b, double tol, int depth = 0) {
    double err = 0.0;
    cplx whole = gk15(f, a, b, &err);
    if (err < tol || depth > 30) return whole;
    double mid = 0.5 * (a + b);
    return adaptive_quad(f, a, mid, tol * 0.6, depth + 1) +
           adaptive_quad(f, mid, b, tol * 0.6, depth + 1);
}

// R0(w) = -pi^2/6 - (1/2) int_0^w (log t/(1-t) + log(1-t)/t) dt along the
// polyline 0 -> ... -> w.
cplx rogers_r0(cplx w) {
    auto integrand = [](cplx t) -> cplx {
        // both terms have removable/integrable behavior away from t=1
        cplx a = (std::abs(1.0 - t) < 1e-300) ? cplx(0.0, 0.0) : principal_log(t) / (1.0 - t);
        cplx b = (std::abs(t) < 1e-300) ? cplx(-1.0, 0.0) : principal_log(1.0 - t) / t;
        return a + b;
    };
    std::vector<cplx> nodes{cplx(0.0, 0.0), w};
    // detour if the straight segment grazes t = 1
    {
        cplx d = w;
        double L2 = std::norm(d);
        if (L2 > 0) {
            double s = ((1.0 - 0.0) * d.real() + (0.0) * d.imag()) / L2;  // projection of 1 onto [0,w]
            if (s > 0 && s < 1) {
                cplx closest = s * d;
                if (std::abs(closest - 1.0) < 0.05) {
                    cplx mid = I * std::abs(w);
                    // keep the detour on the same side as w when possible
                    if (w.imag() < 0) mid = -mid;
                    nodes = {cplx(0.0, 0.0), mid, w};
                }
            }
        }
    }
    cplx total{0.0, 0.0};
    for (size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
        cplx p = nodes[seg], q = nodes[seg + 1];
        auto f = [&](double s) { return integrand(p + s * (q - p)) * (q - p); };
        total += adaptive_quad(f, 0.0, 1.0, 1e-11);
    }
    return -PI * PI / 6.0 - 0.5 * total;
}

}  // namespace

cplx rogers_extended(cplx w0, int f0, int f1) {
    if (w0 == cplx(0.0, 0.0) || w0 == cplx(1.0, 0.0))
        throw std::domain_error("rogers_extended: w0 in {0,1}");
    cplx base = rogers_r0(w0);
    cplx corr = 0.5 * I * PI *
                (static_cast<double>(f0) * principal_log(1.0 - w0) +
                 static_cast<double>(f1) * principal_log(w0));
    return base + corr;
}

double lobachevsky(double theta) {
    // reduce to [0, pi) using pi-periodicity, then integrate
    double t = std::fmod(theta, PI);
    if (t < 0) t += PI;
    if (t == 0.0) return 0.0;
    auto f = [](double x) -> cplx {
        double s = 2.0 * std::sin(x);
        if (s <= 0) return {0.0, 0.0};
        return {std::log(s), 0.0};
    };
    cplx v = adaptive_quad(f, 0.0, t, 1e-11);
    return -v.real();
}

double lobachevsky_series(double theta, int terms) {
    double acc = 0.0;
    for (int n = terms; n >= 1; --n) acc += std::sin(2.0 * n * theta) / (static_cast<double>(n) * n);
    return 0.5 * acc;
}

}  // namespace qhg
