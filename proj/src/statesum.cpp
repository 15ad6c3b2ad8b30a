#include "qhg/statesum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qhg {

namespace {

std::vector<size_t> strides(int rank, int n) {
    std::vector<size_t> s(rank, 1);
    for (int i = rank - 2; i >= 0; --i) s[i] = s[i + 1] * n;
    return s;
}

bool advance(std::vector<int>& idx, int n) {
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[i] < n) return true;
        idx[i] = 0;
    }
    return false;
}

}  // namespace

LTensor self_trace(const LTensor& t) {
    int dup_a = -1, dup_b = -1;
    for (size_t i = 0; i < t.labels.size() && dup_a < 0; ++i)
        for (size_t j = i + 1; j < t.labels.size(); ++j)
            if (t.labels[i] == t.labels[j]) {
                dup_a = static_cast<int>(i);
                dup_b = static_cast<int>(j);
                break;
            }
    if (dup_a < 0) return t;

    LTensor r;
    r.n = t.n;
    for (size_t i = 0; i < t.labels.size(); ++i)
        if (static_cast<int>(i) != dup_a && static_cast<int>(i) != dup_b)
            r.labels.push_back(t.labels[i]);
    const int rank = static_cast<int>(r.labels.size());
    auto st = strides(static_cast<int>(t.labels.size()), t.n);
    auto sr = strides(rank, r.n);
    r.data.assign(rank == 0 ? 1 : sr[0] * r.n, 0.0);
    std::vector<int> idx(rank, 0);
    do {
        size_t off = 0;
        {
            int k = 0;
            for (size_t i = 0; i < t.labels.size(); ++i)
                if (static_cast<int>(i) != dup_a && static_cast<int>(i) != dup_b)
                    off += st[i] * idx[k++];
        }
        cplx s = 0.0;
        for (int d = 0; d < t.n; ++d) s += t.data[off + st[dup_a] * d + st[dup_b] * d];
        size_t ro = 0;
        for (int k = 0; k < rank; ++k) ro += sr[k] * idx[k];
        r.data[ro] = s;
    } while (advance(idx, t.n));
    return self_trace(r);
}

LTensor contract_pair(const LTensor& a_in, const LTensor& b_in) {
    LTensor a = self_trace(a_in), b = self_trace(b_in);
    if (a.n != b.n) throw std::invalid_argument("contract_pair: level mismatch");
    const int n = a.n;
    std::vector<int> shared;
    for (int la : a.labels)
        if (std::find(b.labels.begin(), b.labels.end(), la) != b.labels.end())
            shared.push_back(la);

    LTensor r;
    r.n = n;
    std::vector<int> a_free, b_free;  // axis positions of free labels
    for (size_t i = 0; i < a.labels.size(); ++i)
        if (std::find(shared.begin(), shared.end(), a.labels[i]) == shared.end()) {
            r.labels.push_back(a.labels[i]);
            a_free.push_back(static_cast<int>(i));
        }
    for (size_t i = 0; i < b.labels.size(); ++i)
        if (std::find(shared.begin(), shared.end(), b.labels[i]) == shared.end()) {
            r.labels.push_back(b.labels[i]);
            b_free.push_back(static_cast<int>(i));
        }
    std::vector<int> a_sh, b_sh;  // axis positions of shared labels, aligned
    for (int l : shared) {
        a_sh.push_back(static_cast<int>(
            std::find(a.labels.begin(), a.labels.end(), l) - a.labels.begin()));
        b_sh.push_back(static_cast<int>(
            std::find(b.labels.begin(), b.labels.end(), l) - b.labels.begin()));
    }

    auto sa = strides(static_cast<int>(a.labels.size()), n);
    auto sb = strides(static_cast<int>(b.labels.size()), n);
    const int rank = static_cast<int>(r.labels.size());
    auto sr = strides(rank, n);
    r.data.assign(rank == 0 ? 1 : sr[0] * n, 0.0);

    std::vector<int> fidx(rank, 0);
    std::vector<int> cidx(shared.size(), 0);
    do {
        size_t ao = 0, bo = 0, ro = 0;
        for (size_t k = 0; k < a_free.size(); ++k) ao += sa[a_free[k]] * fidx[k];
        for (size_t k = 0; k < b_free.size(); ++k)
            bo += sb[b_free[k]] * fidx[a_free.size() + k];
        for (int k = 0; k < rank; ++k) ro += sr[k] * fidx[k];
        cplx s = 0.0;
        std::fill(cidx.begin(), cidx.end(), 0);
        if (shared.empty())
            s = a.data[ao] * b.data[bo];
        else
            do {
                size_t ac = ao, bc = bo;
                for (size_t k = 0; k < shared.size(); ++k) {
                    ac += sa[a_sh[k]] * cidx[k];
                    bc += sb[b_sh[k]] * cidx[k];
                }
                s += a.data[ac] * b.data[bc];
            } while (advance(cidx, n));
        r.data[ro] = s;
    } while (advance(fidx, n));
    return r;
}

namespace {

// Face-class label of (tet, face): glued faces share their gluing index,
// boundary faces get a unique label beyond the gluing range.
int face_label(const Mesh& m, int t, int f) {
    for (size_t gi = 0; gi < m.gluings().size(); ++gi) {
        const Gluing& g = m.gluings()[gi];
        if ((g.tet_a == t && g.face_a == f) || (g.tet_b == t && g.face_b == f))
            return static_cast<int>(gi);
    }
    return static_cast<int>(m.gluings().size()) + 4 * t + f;
}

double norm_exponent(const Mesh& m) {
    int v_delta = 0, v_interior = 0;
    for (const VertexClassInfo& v : m.classify_vertices()) {
        if (v.kind == VertexKind::manifold) ++v_interior;
        if (v.kind == VertexKind::boundary && v.euler == 1) ++v_delta;
    }
    return -(v_delta / 2.0 + v_interior);
}

}  // namespace

LTensor sort_axes(const LTensor& t) {
    std::vector<int> order(t.labels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return t.labels[a] < t.labels[b]; });
    LTensor r;
    r.n = t.n;
    for (int o : order) r.labels.push_back(t.labels[o]);
    auto st = strides(static_cast<int>(t.labels.size()), t.n);
    auto sr = strides(static_cast<int>(r.labels.size()), r.n);
    r.data.assign(t.data.size(), 0.0);
    std::vector<int> idx(r.labels.size(), 0);
    do {
        size_t ro = 0, to = 0;
        for (size_t k = 0; k < idx.size(); ++k) {
            ro += sr[k] * idx[k];
            to += st[order[k]] * idx[k];
        }
        r.data[ro] = t.data[to];
    } while (advance(idx, t.n));
    return r;
}

std::vector<LTensor> mesh_tensors(const Mesh& m, const LevelN& N) {
    if (N.n < 3) throw std::invalid_argument("mesh_tensors: level must be > 1");
    std::vector<LTensor> out;
    for (int t = 0; t < m.n_tets(); ++t) {
        Tensor4 T = by_face(rn_tensor(m.tets()[t], N), m.tets()[t].branching.b_sign);
        LTensor lt;
        lt.n = N.n;
        for (int f = 0; f < 4; ++f) lt.labels.push_back(face_label(m, t, f));
        lt.data = std::move(T.a);
        out.push_back(std::move(lt));
    }
    return out;
}

std::vector<std::pair<int, int>> contraction_plan(const Mesh& m) {
    // Simulate on label multisets only.
    std::vector<std::vector<int>> slots;
    for (int t = 0; t < m.n_tets(); ++t) {
        std::vector<int> labs;
        for (int f = 0; f < 4; ++f) labs.push_back(face_label(m, t, f));
        slots.push_back(labs);
    }
    auto reduce = [](std::vector<int> l) {
        std::vector<int> out;
        for (int x : l)
            if (std::count(l.begin(), l.end(), x) == 1) out.push_back(x);
        return out;
    };
    for (auto& s : slots) s = reduce(s);
    std::vector<std::pair<int, int>> plan;
    while (slots.size() > 1) {
        int bi = 0, bj = 1, best_rank = -1;
        for (size_t i = 0; i < slots.size(); ++i)
            for (size_t j = i + 1; j < slots.size(); ++j) {
                std::vector<int> merged = slots[i];
                merged.insert(merged.end(), slots[j].begin(), slots[j].end());
                int rank = static_cast<int>(reduce(merged).size());
                if (best_rank < 0 || rank < best_rank) {
                    best_rank = rank;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        std::vector<int> merged = slots[bi];
        merged.insert(merged.end(), slots[bj].begin(), slots[bj].end());
        slots[bi] = reduce(merged);
        slots.erase(slots.begin() + bj);
        plan.push_back({bi, bj});
    }
    return plan;
}

LTensor trace_tensor(const Mesh& m, const LevelN& N) {
    double expo = norm_exponent(m);
    if (N.n == 1) {
        LTensor r;
        cplx v = 1.0;
        for (const FlatChargedTet& t : m.tets()) v *= r1_scalar(t);
        r.data[0] = v;  // N^expo = 1
        return r;
    }
    std::vector<LTensor> tens = mesh_tensors(m, N);
    for (auto& t : tens) t = self_trace(t);
    for (auto [i, j] : contraction_plan(m)) {
        tens[i] = contract_pair(tens[i], tens[j]);
        tens.erase(tens.begin() + j);
    }
    LTensor r = sort_axes(tens.at(0));
    double norm = std::pow(static_cast<double>(N.n), expo);
    for (auto& x : r.data) x *= norm;
    return r;
}

LTensor trace_tensor_brute_force(const Mesh& m, const LevelN& N) {
    if (N.n == 1) return trace_tensor(m, N);
    std::vector<LTensor> tens = mesh_tensors(m, N);
    std::map<int, int> count;
    for (const auto& t : tens)
        for (int l : t.labels) count[l]++;
    std::vector<int> all_labels, bnd_labels;
    for (auto [l, c] : count) {
        all_labels.push_back(l);
        if (c == 1) bnd_labels.push_back(l);
    }
    LTensor r;
    r.n = N.n;
    r.labels = bnd_labels;
    auto sr = strides(static_cast<int>(bnd_labels.size()), N.n);
    r.data.assign(bnd_labels.empty() ? 1 : sr[0] * N.n, 0.0);

    std::vector<int> state(all_labels.size(), 0);
    std::map<int, int> pos;
    for (size_t i = 0; i < all_labels.size(); ++i) pos[all_labels[i]] = static_cast<int>(i);
    do {
        cplx prod = 1.0;
        for (const auto& t : tens) {
            auto st = strides(static_cast<int>(t.labels.size()), t.n);
            size_t off = 0;
            for (size_t k = 0; k < t.labels.size(); ++k)
                off += st[k] * state[pos[t.labels[k]]];
            prod *= t.data[off];
        }
        size_t ro = 0;
        for (size_t k = 0; k < bnd_labels.size(); ++k)
            ro += sr[k] * state[pos[bnd_labels[k]]];
        r.data[ro] += prod;
    } while (advance(state, N.n));

    double norm = std::pow(static_cast<double>(N.n), norm_exponent(m));
    for (auto& x : r.data) x *= norm;
    return r;
}

PhaseWitness eq_mod_n(const LTensor& a, const LTensor& b, const LevelN& N, double tol) {
    PhaseWitness w;
    if (a.data.size() != b.data.size()) return w;
    size_t imax = 0;
    for (size_t i = 0; i < b.data.size(); ++i)
        if (std::abs(b.data[i]) > std::abs(b.data[imax])) imax = i;
    double bmax = std::abs(b.data[imax]);
    if (bmax < 1e-300) {
        double amax = 0;
        for (const auto& x : a.data) amax = std::max(amax, std::abs(x));
        w.equal = amax < tol;
        w.scalar = 1.0;
        return w;
    }
    cplx ratio = a.data[imax] / b.data[imax];
    w.scalar = ratio;
    double best = 1e300;
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < N.n; ++k) {
            cplx cand = (s == 0 ? 1.0 : -1.0) * N.zeta_pow(k);
            double d = std::abs(ratio - cand);
            if (d < best) {
                best = d;
                w.sign = (s == 0) ? +1 : -1;
                w.phase_index = k;
            }
        }
    if (best > tol * std::max(1.0, std::abs(ratio))) return w;
    double worst = 0, amax = 0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        worst = std::max(worst, std::abs(a.data[i] - ratio * b.data[i]));
        amax = std::max(amax, std::abs(a.data[i]));
    }
    w.equal = worst <= tol * std::max(1.0, amax);
    return w;
}

}  // namespace qhg
