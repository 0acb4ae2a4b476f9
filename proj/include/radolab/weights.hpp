#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radolab/hypergraph.hpp"
#include "radolab/rado.hpp"

namespace rado {

// Additive coordinate weights, one per column of the first matrix, each >= 1.
struct WeightFunction {
    int k = 0;
    std::vector<Rational> w;

    Rational of_set(uint32_t mask) const;
    Rational of_set(const std::vector<int>& I) const;
    Rational total() const;
};

// e[mask] = |I| - rk A + rk A_{I-bar} for every nonempty index set I.
struct ExponentTable {
    int k = 0;
    std::vector<int> e;  // indexed by mask; e[0] unused

    int of_set(uint32_t mask) const { return e[mask]; }
};

ExponentTable exponent_table(const RadoProfile& A);

// min over I containing x of e(I) - w(I)/m(A, B), shifted by -1 + 1/m(B).
// Zero when every constraint through x is tight at its minimum; negative
// when w overshoots one of them.
Rational weight_slack(const WeightFunction& w, int x, const RadoProfile& A,
                      const RadoProfile& B);

// Maximises the total weight subject to w(i) >= 1 and, for every nonempty I,
// e(I) - w(I)/m(A,B) >= 1 - 1/m(B). Among the maximisers, returns the
// lexicographically smallest vertex. The result is verified exactly:
// weight_slack must vanish at every coordinate.
WeightFunction solve_weights(const RadoProfile& A, const RadoProfile& B);

struct MinimiserReport {
    Rational min_value;                // min over nonempty I of the slack term
    std::vector<uint32_t> minimisers;  // masks achieving it, ascending
    bool proper = false;               // every coordinate lies in some minimiser
};

// All I achieving min_I (e(I) - w(I)/m(A,B)) - 1 + 1/m(B).
MinimiserReport minimiser_sets(const WeightFunction& w, const RadoProfile& A,
                               const RadoProfile& B);

struct BoundednessPoint {
    int n = 0;
    double log_min = 0;      // ln of min_I n^{-w(I)/m(A,B)} |H_I|
    uint32_t argmin_mask = 0;  // finite-n minimising index set
};

struct BoundednessReport {
    std::vector<BoundednessPoint> points;
    double slope = 0;     // least-squares fit of log_min against ln n
    double expected = 0;  // 1 - 1/m(B)
    double deviation = 0;
};

// Checks that the worst-case weighted projection count still grows: with
// p = n^{-1/m(A,B)}, the minimum over I of p^{w(I)} |H_I| should scale like
// n^{1 - 1/m(B)}. Grid rules match projection_count_audit.
BoundednessReport boundedness_audit(const RadoProfile& A, const RadoProfile& B,
                                    const WeightFunction& w, const std::vector<int>& grid,
                                    EnumerationOptions opt = {});

// {"1": "num/den", ...} with 1-based keys in ascending order.
std::string weights_to_json(const WeightFunction& w);
WeightFunction weights_from_json(const std::string& text);

}  // namespace rado
