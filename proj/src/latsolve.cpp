#include "qhg/latsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qhg {

namespace {

using i128 = __int128;

long long checked(i128 v) {
    if (v > i128(9223372036854775807LL) || v < -i128(9223372036854775807LL))
        throw std::overflow_error("integer solver: entry overflow");
    return static_cast<long long>(v);
}

// Column operation col_a += q * col_b applied to both M and U.
void col_axpy(imat& M, imat& U, int a, int b, long long q) {
    for (auto& row : M) row[a] = checked(i128(row[a]) + i128(q) * row[b]);
    for (auto& row : U) row[a] = checked(i128(row[a]) + i128(q) * row[b]);
}

void col_swap(imat& M, imat& U, int a, int b) {
    for (auto& row : M) std::swap(row[a], row[b]);
    for (auto& row : U) std::swap(row[a], row[b]);
}

void col_negate(imat& M, imat& U, int a) {
    for (auto& row : M) row[a] = -row[a];
    for (auto& row : U) row[a] = -row[a];
}

}  // namespace

IntSolution solve_integer(const imat& A, const ivec& b, int cols) {
    const int rows = static_cast<int>(A.size());
    for (const auto& r : A)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument("solve_integer: ragged matrix");
    if (static_cast<int>(b.size()) != rows)
        throw std::invalid_argument("solve_integer: rhs size mismatch");

    imat M = A;
    imat U(cols, ivec(cols, 0));
    for (int i = 0; i < cols; ++i) U[i][i] = 1;

    int rank = 0;
    std::vector<int> pivot_row;  // row index of each pivot column
    for (int i = 0; i < rows && rank < cols; ++i) {
        // Reduce columns >= rank so that at most one has a nonzero in row i.
        while (true) {
            int nz = -1, nz2 = -1;
            for (int c = rank; c < cols; ++c) {
                if (M[i][c] != 0) {
                    if (nz < 0)
                        nz = c;
                    else {
                        nz2 = c;
                        break;
                    }
                }
            }
            if (nz < 0) break;  // row is zero beyond rank: no pivot here
            if (nz2 < 0) {
                if (nz != rank) col_swap(M, U, rank, nz);
                if (M[i][rank] < 0) col_negate(M, U, rank);
                pivot_row.push_back(i);
                ++rank;
                break;
            }
            // Euclidean step between the two smallest-magnitude entries.
            if (std::llabs(M[i][nz2]) > std::llabs(M[i][nz])) std::swap(nz, nz2);
            long long q = M[i][nz] / M[i][nz2];
            col_axpy(M, U, nz, nz2, -q);
        }
    }

    IntSolution out;
    for (int c = rank; c < cols; ++c) {
        ivec g(cols);
        for (int r = 0; r < cols; ++r) g[r] = U[r][c];
        out.kernel.push_back(std::move(g));
    }

    // Back-substitute: M (restricted to pivot columns) is in column echelon
    // form with pivot_row strictly increasing.
    ivec y(rank, 0);
    for (int k = 0; k < rank; ++k) {
        int i = pivot_row[k];
        i128 rhs = b[i];
        for (int j = 0; j < k; ++j) rhs -= i128(M[i][j]) * y[j];
        if (M[i][k] == 0 || rhs % M[i][k] != 0) return out;  // infeasible
        y[k] = checked(rhs / M[i][k]);
    }
    // Verify the remaining rows.
    ivec x(cols, 0);
    for (int r = 0; r < cols; ++r) {
        i128 s = 0;
        for (int k = 0; k < rank; ++k) s += i128(U[r][k]) * y[k];
        x[r] = checked(s);
    }
    for (int i = 0; i < rows; ++i) {
        i128 s = 0;
        for (int c = 0; c < cols; ++c) s += i128(A[i][c]) * x[c];
        if (s != b[i]) return out;  // inconsistent row
    }

    // Max-norm reduction of the particular solution modulo the kernel.
    for (int pass = 0; pass < 4; ++pass) {
        for (const auto& g : out.kernel) {
            i128 num = 0, den = 0;
            for (int r = 0; r < cols; ++r) {
                num += i128(x[r]) * g[r];
                den += i128(g[r]) * g[r];
            }
            if (den == 0) continue;
            long long t = checked((2 * num + (num >= 0 ? den : -den)) / (2 * den));
            if (t != 0)
                for (int r = 0; r < cols; ++r)
                    x[r] = checked(i128(x[r]) - i128(t) * g[r]);
        }
    }

    out.feasible = true;
    out.x = std::move(x);
    return out;
}

bool in_span(const std::vector<ivec>& gens, const ivec& v) {
    const int n = static_cast<int>(v.size());
    imat A(n, ivec(gens.size(), 0));
    for (size_t c = 0; c < gens.size(); ++c) {
        if (static_cast<int>(gens[c].size()) != n)
            throw std::invalid_argument("in_span: generator size mismatch");
        for (int r = 0; r < n; ++r) A[r][c] = gens[c][r];
    }
    return solve_integer(A, v, static_cast<int>(gens.size())).feasible;
}

}  // namespace qhg
