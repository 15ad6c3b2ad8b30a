#pragma once
// State-sum contraction: per-tetrahedron dilogarithm tensors contracted
// over N-states of the face classes into the trace tensor, plus the
// comparison predicate up to sign and N-th roots of unity.

#include <utility>
#include <vector>

#include "qhg/dilog.hpp"
#include "qhg/mesh.hpp"

namespace qhg {

// Small dense tensor with one axis per label; all axes have length n and
// data is row-major with the last axis fastest.
struct LTensor {
    int n = 1;
    std::vector<int> labels;
    std::vector<cplx> data{cplx(1.0)};

    size_t size() const { return data.size(); }
    bool scalar() const { return labels.empty(); }
    cplx value() const { return data.at(0); }
};

// Sum over every label that appears twice within the tensor.
LTensor self_trace(const LTensor& t);

// Contract two tensors over their shared labels (after self-tracing).
LTensor contract_pair(const LTensor& a, const LTensor& b);

// Reorder axes so labels are ascending.
LTensor sort_axes(const LTensor& t);

// Per-tetrahedron tensors of a decorated mesh, axes ordered by face and
// labelled by face class (glued faces share a label).
std::vector<LTensor> mesh_tensors(const Mesh& m, const LevelN& N);

// Greedy contraction schedule: each step merges two tensor slots,
// choosing the pair whose merged tensor has the fewest free axes.
std::vector<std::pair<int, int>> contraction_plan(const Mesh& m);

// Normalized total contraction.  The result has one axis per boundary
// face (sorted by label); for closed meshes it is a scalar.  The
// normalization is N^{-(v_delta/2 + v_I)} with v_delta the disk-link
// boundary vertex classes and v_I the sphere-link interior ones.
LTensor trace_tensor(const Mesh& m, const LevelN& N);

// Oracle: plain enumeration of all N-states of the face classes.
LTensor trace_tensor_brute_force(const Mesh& m, const LevelN& N);

struct PhaseWitness {
    bool equal = false;
    cplx scalar = 0.0;  // matched ratio a/b at the dominant entry of b
    int phase_index = 0;  // k with scalar ~ sign * zeta^k
    int sign = +1;
};

// Equality of tensors up to a global factor in {±zeta^k}.
PhaseWitness eq_mod_n(const LTensor& a, const LTensor& b, const LevelN& N,
                      double tol = 1e-8);

}  // namespace qhg
