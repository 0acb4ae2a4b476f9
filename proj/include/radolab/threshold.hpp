#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "radolab/hypergraph.hpp"
#include "radolab/prng.hpp"
#include "radolab/rado.hpp"
#include "radolab/ramsey.hpp"
#include "radolab/weights.hpp"

namespace rado {

struct RandomSetSample {
    int n = 0;
    uint64_t seed = 0;
    std::vector<int> included;  // ascending subset of [1, n]
    std::vector<int> part;      // 0-based part of element x at index x-1; empty for plain samples
};

// Element x joins with probability p, independently. The same (seed, cell,
// trial) address always reproduces the same sample.
RandomSetSample sample_binomial(int n, double p, uint64_t seed, uint32_t cell = 0,
                                uint32_t trial = 0);

// Partite variant: a uniform part xi(x) in [0, k) is drawn per element, and x
// joins with probability p^{w(xi(x))}. Inclusion draws share the plain
// sampler's address, so this sample is a subset of the binomial one.
RandomSetSample sample_weighted_partite(int n, double p, const WeightFunction& w, uint64_t seed,
                                        uint32_t cell = 0, uint32_t trial = 0);

struct CoupledSample {
    RandomSetSample weighted, plain;
};

CoupledSample sample_coupled(int n, double p, const WeightFunction& w, uint64_t seed,
                             uint32_t cell = 0, uint32_t trial = 0);

struct ConcentrationRow {
    std::vector<int> I;                // 0-based index set
    long long projection_count = 0;    // distinct I-keys of the full hypergraph
    double threshold = 0;              // 2 q^{w(I)} projection_count
    int hits = 0;                      // trials with X_I below the threshold
    double frequency = 0;
    bool small_regime = false;         // q^{w(I)} projection_count < 10: too sparse to mean much
};

struct ConcentrationReport {
    int n = 0, trials = 0;
    double q = 0;
    std::vector<ConcentrationRow> rows;  // ascending mask order
};

// Samples the weighted partite set per trial and counts, for every index set
// I, the distinct I-keys whose elements are all sampled into the matching
// parts; reports how often that count stays under twice its first moment.
ConcentrationReport concentration_check(const RadoProfile& A, const WeightFunction& w, double q,
                                        int n, int trials, uint64_t seed,
                                        EnumerationOptions opt = {});

// Sparse polynomial in q with rational exponents and coefficients.
struct ExpPoly {
    std::map<Rational, Rational> terms;  // exponent -> coefficient

    double eval(const Rational& q) const;  // high-precision inside, narrowed at the end
};

struct JansonReport {
    ExpPoly mu;           // q^{w([k])} e(H) / k^k
    ExpPoly big_delta;    // half-sum over agreeing ordered edge pairs of q^{2w([k]) - w(I)}
    ExpPoly small_delta;  // max over edges of its intersecting-edge mass
    double exponent = 0;  // min(mu^2 / 8 big_delta, mu / 2, mu / 6 small_delta) at q
    double bound = 0;     // exp(-exponent)
};

// Exponential upper bound for Pr[no edge survives the weighted sample], with
// the three classical terms kept exact as polynomials in q.
JansonReport janson_bound(const Hypergraph& h, const Rational& q, const WeightFunction& w);

struct ScanConfig {
    std::vector<RadoProfile> matrices;
    std::vector<std::string> names;  // aligned with matrices; auto-filled when empty
    std::vector<int> n_grid;
    std::vector<Rational> c_grid;
    int trials = 0;
    uint64_t seed = 0;
    long long oracle_budget = 10'000'000;
    int workers = 1;
    double epsilon = 0.01;  // preflight slack
    Rational cprime = 1;    // preflight tau constant
};

struct ThresholdCell {
    int n = 0;
    Rational C;
    double p = 0;
    bool capped = false;      // C n^{-1/m} exceeded 1
    bool incomplete = false;  // some trials exhausted the oracle budget
    int trials = 0, successes = 0, unknown = 0;
    double ci_low = 0, ci_high = 1;  // Wilson 95% over the decided trials
};

struct ThresholdCurve {
    std::vector<std::string> matrix_names;  // in scan order (densest first)
    std::vector<Rational> m_values;
    Rational m_pair;  // density exponent used for p = C n^{-1/m_pair}
    std::vector<ThresholdCell> cells;  // n-major, C-minor
    std::vector<std::string> warnings;
};

// For each grid cell, draws `trials` binomial samples at p = C n^{-1/m_pair}
// and asks decide_arrow whether the sample spans every colouring. Matrices
// are sorted densest first when needed (with a notice). Trials address the
// generator by (seed, cell, trial), so curves are reproducible bit for bit
// regardless of worker count.
ThresholdCurve threshold_scan(const ScanConfig& cfg);

// "n,C,p,trials,successes,unknown,ci_low,ci_high" rows, deterministic format.
std::string curve_to_csv(const ThresholdCurve& curve);

// JSON run manifest: matrices, grids, seed, budgets, densities, warnings.
std::string scan_manifest(const ThresholdCurve& curve, const ScanConfig& cfg);

}  // namespace rado
