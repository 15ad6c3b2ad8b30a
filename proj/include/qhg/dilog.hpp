#pragma once
// Matrix dilogarithms at odd level N: the basic tensor L_N and its inverse,
// the fully decorated tetrahedral tensor R_N, and the level-1 scalar built
// from the extended Rogers dilogarithm.

#include <vector>

#include "qhg/tetra.hpp"

namespace qhg {

// Rank-4 tensor of shape (n,n,n,n), stored row-major; entry (i,j,k,l) is
// T[((i*n + j)*n + k)*n + l].  Lower indices (k,l) of L_N address the same
// axes as (k,l) here.
struct Tensor4 {
    int n = 0;
    std::vector<cplx> a;

    Tensor4() = default;
    explicit Tensor4(int n_) : n(n_), a(static_cast<size_t>(n_) * n_ * n_ * n_) {}
    cplx& at(int i, int j, int k, int l) {
        return a[static_cast<size_t>(((i * n + j) * n + k)) * n + l];
    }
    cplx at(int i, int j, int k, int l) const {
        return a[static_cast<size_t>(((i * n + j) * n + k)) * n + l];
    }
};

// (L_N)_{k,l}^{i,j} = h(u') zeta^{kj + (m+1)k^2} omega(u',v' | i-k) delta(i+j==l).
// Requires u'^N + v'^N = 1.
Tensor4 ln_tensor(cplx up, cplx vp, const LevelN& N);

// (L_N^{-1})_{k,l}^{i,j} = ([u']/h(u')) zeta^{-il-(m+1)i^2}
//     delta(k+l==j) / omega(u'/zeta, v' | k-i).
Tensor4 ln_tensor_inv(cplx up, cplx vp, const LevelN& N);

// Contraction sum_{a,b} A_{a,b}^{i,j} B_{k,l}^{a,b}, i.e. stacking B after A.
Tensor4 compose(const Tensor4& A, const Tensor4& B);

// Max-norm distance from the identity delta_k^i delta_l^j.
double identity_defect(const Tensor4& T);

// For a flat/charged tetrahedron Delta:
//   R_N(Delta) = ((w'_0)^{-c_1} (w'_1)^{c_0})^{(N-1)/2} (L_N)^{*_b}(w'_0, 1/w'_1).
Tensor4 rn_tensor(const FlatChargedTet& t, const LevelN& N);

// Level-1 scalar: exp( (*_b / (i pi)) * R(w_0; f_0, f_1) ) with R the
// extended Rogers dilogarithm.
cplx r1_scalar(const FlatChargedTet& t);

// Face ordering of the tensor slots: slot s of the tensor (s = 0..3 meaning
// upper-left i, upper-right j, lower-left k, lower-right l) sits on face
// face_map[s] of the tetrahedron.  Depends only on *_b.
std::array<int, 4> slot_faces(int b_sign);

// Transpose the slot-ordered tensor so axis a is the slot lying on face a.
Tensor4 by_face(const Tensor4& T, int b_sign);

}  // namespace qhg
