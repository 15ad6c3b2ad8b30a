#pragma once
// Exact integer linear algebra: solve A x = b over the integers via
// column Hermite reduction, with kernel basis and span membership tests.

#include <vector>

namespace qhg {

using ivec = std::vector<long long>;
using imat = std::vector<ivec>;  // row-major list of rows

struct IntSolution {
    bool feasible = false;
    ivec x;                    // a particular solution (max-norm reduced)
    std::vector<ivec> kernel;  // basis of the integer kernel of A
};

// Solve A x = b exactly over ZZ.  A has rows.size() rows and cols columns;
// every row must have length cols.  Infeasible systems return
// feasible=false with the kernel still populated.
IntSolution solve_integer(const imat& A, const ivec& b, int cols);

// True iff v is an integer combination of the generators.
bool in_span(const std::vector<ivec>& gens, const ivec& v);

}  // namespace qhg
