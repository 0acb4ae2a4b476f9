#pragma once

#include <string>
#include <vector>

#include "radolab/rado.hpp"

namespace rado {

struct RamseyInstance {
    std::vector<int> ground;            // ascending, distinct, positive
    std::vector<RadoProfile> matrices;  // one per colour
};

std::vector<int> ground_range(int n);  // {1, ..., n}

// Ordered solutions of A x = 0 with pairwise distinct entries, all lying in
// the given colour class of the ground set. Exact count by direct scan.
long long count_monochromatic(const std::vector<int>& ground, const std::vector<int>& colouring,
                              const RadoProfile& A, int colour);

enum class ArrowStatus { ramsey, good_colouring, budget_exhausted };

struct ArrowVerdict {
    ArrowStatus status = ArrowStatus::budget_exhausted;
    std::vector<int> witness;  // one 0-based colour per ground element when good
    long long nodes = 0;
    double seconds = 0;
};

// Backtracking colouring search with "not all colour i" propagation: when all
// but one element of a solution carry colour i, that colour is pruned for the
// last one. Either every colouring is ruled out (ramsey), or a colouring with
// zero monochromatic solutions in every colour is returned (re-verified by
// count_monochromatic), or the node budget ran out. Nodes count every
// assignment, decided or propagated. Colours with identical constraint
// families are interchangeable, so the first element only tries one of each.
// The budget splits evenly across the root branches; workers only sets how
// many of them run concurrently, so verdicts do not depend on it.
ArrowVerdict decide_arrow(const RamseyInstance& inst, long long node_budget = 1'000'000'000,
                          int workers = 1);

struct SupersaturationResult {
    long long value = 0;
    bool exact = false;  // false: budget ran out and value is only the best colouring found
};

// min over r-colourings of [n] of the largest monochromatic ordered-solution
// count of A, by branch and bound (prune once the running maximum reaches the
// incumbent).
SupersaturationResult supersaturation_scan(int n, int r, const RadoProfile& A,
                                           long long node_budget = 50'000'000);

struct ZetaResult {
    Rational value;
    bool exact = false;
};

// min over r-partitions U_1,...,U_r of [n] of max_i e_i(U_i) / e_i([n]),
// where e_i counts ordered solutions of the i-th matrix. Every matrix needs
// at least one solution in [n].
ZetaResult zeta_estimate(int n, const std::vector<RadoProfile>& matrices,
                         long long node_budget = 50'000'000);

// One "element colour" line per ground element, colours printed 1-based.
std::string format_colouring(const std::vector<int>& ground, const std::vector<int>& colouring);

// JSON document with the verdict word, node count, wall time, and (for good
// colourings) the witness in format_colouring form.
std::string format_verdict(const ArrowVerdict& v, const std::vector<int>& ground);

}  // namespace rado
