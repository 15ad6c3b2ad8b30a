#pragma once
// Decorated ideal tetrahedra: branchings, cross-ratio moduli triples,
// integer flattenings and charges, classical and quantum log-branches.

#include <array>
#include <optional>

#include "qhg/specialfn.hpp"

namespace qhg {

// Edge pairs of a tetrahedron grouped by shared cross-ratio modulus:
//   index 0: [01] and [23],  index 1: [12] and [03],  index 2: [02] and [13].
int moduli_index(int a, int b);

// A branching given by a local vertex order; faces delta_i are indexed by
// their opposite vertex. b_sign is the orientation sign *_b of the
// branched tetrahedron.
struct Branching {
    std::array<int, 4> order{0, 1, 2, 3};
    int b_sign = +1;
};

struct ModuliTriple {
    cplx w0, w1, w2;
    cplx operator[](int j) const { return j == 0 ? w0 : (j == 1 ? w1 : w2); }
};

// (w0, 1/(1-w0), 1 - 1/w0); rejects w0 in {0,1}.
ModuliTriple moduli_from_w0(cplx w0);

struct FlatChargedTet {
    Branching branching;
    ModuliTriple w;
    std::array<int, 3> f{0, 0, 0};
    std::array<int, 3> c{0, 0, 1};
    int star_w = 0;  // sign of Im(w0), 0 if degenerate (real moduli)

    FlatChargedTet() = default;
    FlatChargedTet(cplx w0, std::array<int, 3> f_, std::array<int, 3> c_, int b_sign);
};

// l_j = log(w_j) + i pi f_j; the components sum to zero for a valid
// flattening.
std::array<cplx, 3> log_branch(const FlatChargedTet& t);

// l_{j,N} = log(w_j) + i pi (N+1)(f_j - *_b c_j).
std::array<cplx, 3> quantum_log_branch(const FlatChargedTet& t, const LevelN& N);

// w'_j = exp(l_{j,N}/N); satisfies (w'_j)^N = w_j and
// w'_0 w'_1 w'_2 = exp(-*_b i pi / N).
std::array<cplx, 3> w_prime(const FlatChargedTet& t, const LevelN& N);

}  // namespace qhg
