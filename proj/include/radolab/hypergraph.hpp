#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "radolab/rado.hpp"

namespace rado {

// Ordered solution hypergraph of Ax = 0 over [n]: edges are k-tuples with
// pairwise distinct entries, stored flat, lexicographically sorted.
struct Hypergraph {
    int n = 0;
    int k = 0;
    IntMatrix matrix;
    std::vector<int32_t> flat;

    size_t edge_count() const { return k ? flat.size() / k : 0; }
    std::span<const int32_t> edge(size_t i) const { return {flat.data() + i * k, static_cast<size_t>(k)}; }
};

struct EnumerationOptions {
    long long edge_cap = 100'000'000;  // guard on the n^(k - rk A) candidate estimate
    int workers = 1;
};

// Streams every solution of Ax = 0 with pairwise distinct entries and
// x_j in domains[j] (an empty domain means the full range [1, n]).
// A must have full row rank. Visit order is deterministic but not sorted.
void scan_solutions(const IntMatrix& A, int n, const std::vector<std::vector<int>>& domains,
                    const std::function<void(const int32_t*)>& visit);

Hypergraph enumerate_solutions(const RadoProfile& A, int n, EnumerationOptions opt = {});

// One edge per line, space separated, in stored (lexicographic) order.
std::string format_edges(const Hypergraph& h);

// I-projection: distinct I-restrictions of the edges with multiplicities.
// Keys are stored flat and lexicographically sorted.
struct Projection {
    std::vector<int> index_set;  // 0-based, ascending
    std::vector<int32_t> keys_flat;
    std::vector<long long> multiplicity;

    size_t key_len() const { return index_set.size(); }
    size_t key_count() const { return multiplicity.size(); }
    std::span<const int32_t> key(size_t i) const {
        return {keys_flat.data() + i * key_len(), key_len()};
    }
    // Index of a key, or -1 when absent.
    long long find(std::span<const int32_t> key) const;
    long long total_multiplicity() const;
};

Projection project(const Hypergraph& h, const std::vector<int>& I);

// Number of distinct W-projection keys whose I-restriction equals u.
// Requires I a proper nonempty subset of W and u a key of project(h, I).
long long degree_in_window(const Hypergraph& h, const std::vector<int>& I,
                           const std::vector<int>& W, const std::vector<int32_t>& u);

// All window degrees at once: for each key of project(h, I), the number of
// distinct W-keys extending it (aligned with project(h, I) key order).
std::vector<long long> window_degrees(const Hypergraph& h, const std::vector<int>& I,
                                      const std::vector<int>& W);

// Least K with deg_W(u) <= K |H_W| / |H_I| over all nonempty I strictly inside
// W and all keys u; exhaustive scan. Requires every projection nonempty.
Rational tameness_constant(const Hypergraph& h);

// Unordered shadow: edges as deduplicated sorted vertex sets over [n].
struct UnorderedHypergraph {
    int n = 0;
    int k = 0;
    std::vector<int32_t> flat;

    size_t edge_count() const { return k ? flat.size() / k : 0; }
    std::span<const int32_t> edge(size_t i) const { return {flat.data() + i * k, static_cast<size_t>(k)}; }
};

UnorderedHypergraph unordered_shadow(const Hypergraph& h);

struct CodegreeReport {
    std::vector<Rational> delta_j;  // delta_j[j] for j = 2..k, index j-2
    Rational delta;
    Rational avg_degree;            // d = k e / n over the vertex set [n]
};

// Saxton-Thomason co-degree function, exact in tau.
CodegreeReport codegree_function(const UnorderedHypergraph& h, const Rational& tau);

struct AuditRow {
    std::vector<int> I;          // 0-based
    int expected_exponent = 0;   // |I| - rk A + rk A_{I-bar}
    double slope = 0;
    std::vector<long long> counts;  // |H_I| per grid point
};

struct ProjectionAudit {
    std::vector<int> grid;
    std::vector<AuditRow> rows;  // ordered by index-set mask
};

// Fits log |H_I| against log n over the grid for every nonempty I.
// Grid needs >= 3 points spanning at least a factor of 4.
ProjectionAudit projection_count_audit(const RadoProfile& A, const std::vector<int>& grid,
                                       EnumerationOptions opt = {});

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rado
