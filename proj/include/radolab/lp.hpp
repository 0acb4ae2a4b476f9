#pragma once

#include <vector>

#include "radolab/rational.hpp"

namespace rado {

// max c.x  subject to  A x <= b, x >= 0. b may have any sign.
struct LinearProgram {
    int nvars = 0;
    std::vector<std::vector<Rational>> A;  // each row has nvars entries
    std::vector<Rational> b;
    std::vector<Rational> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational objective;
    std::vector<Rational> x;
};

// Exact two-phase primal simplex with Bland's rule (no cycling, no rounding).
LpResult solve_lp(const LinearProgram& lp);

// Among the maximisers of c.x, the point minimising x_0, then x_1, and so on.
// Solved as a chain of programs, pinning one coordinate per step. Raises
// validation_error unless the program is feasible and bounded.
std::vector<Rational> lex_smallest_optimum(const LinearProgram& lp);

}  // namespace rado
