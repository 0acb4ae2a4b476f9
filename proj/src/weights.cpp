#include "radolab/weights.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "radolab/lp.hpp"
#include "radolab/subsets.hpp"

namespace rado {

Rational WeightFunction::of_set(uint32_t mask) const {
    Rational s = 0;
    for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) s += w[i];
    return s;
}

Rational WeightFunction::of_set(const std::vector<int>& I) const {
    Rational s = 0;
    for (int i : I) s += w[i];
    return s;
}

Rational WeightFunction::total() const {
    Rational s = 0;
    for (const auto& v : w) s += v;
    return s;
}

ExponentTable exponent_table(const RadoProfile& A) {
    int k = A.matrix.cols;
    if (k > 20) throw validation_error("exponent table limited to 20 columns");
    ExponentTable t;
    t.k = k;
    t.e.assign(1u << k, 0);
    for (unsigned mask = 1; mask < (1u << k); ++mask)
        t.e[mask] = std::popcount(mask) - A.rank +
                    rank(column_submatrix(A.matrix, mask_complement_indices(mask, k)));
    return t;
}

namespace {

struct PairContext {
    int k = 0;
    Rational m12, m2;
    ExponentTable et;
};

PairContext pair_context(const RadoProfile& A, const RadoProfile& B) {
    PairContext ctx;
    ctx.k = A.matrix.cols;
    ctx.m2 = m_density(B).value;
    ctx.m12 = m_asym(A, B).value;
    ctx.et = exponent_table(A);
    return ctx;
}

// e(I) - w(I)/m(A,B) - 1 + 1/m(B); nonnegative for every I iff w is feasible.
Rational slack_term(const PairContext& ctx, const WeightFunction& w, uint32_t mask) {
    return Rational(ctx.et.of_set(mask)) - w.of_set(mask) / ctx.m12 - 1 + Rational(1) / ctx.m2;
}

void check_shape(const WeightFunction& w, int k) {
    if (w.k != k || static_cast<int>(w.w.size()) != k)
        throw validation_error("weight function does not match the matrix width");
}

}  // namespace

Rational weight_slack(const WeightFunction& w, int x, const RadoProfile& A,
                      const RadoProfile& B) {
    PairContext ctx = pair_context(A, B);
    check_shape(w, ctx.k);
    if (x < 0 || x >= ctx.k) throw validation_error("coordinate out of range");
    bool first = true;
    Rational best = 0;
    for (unsigned mask = 1; mask < (1u << ctx.k); ++mask) {
        if (!(mask & (1u << x))) continue;
        Rational v = slack_term(ctx, w, mask);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

WeightFunction solve_weights(const RadoProfile& A, const RadoProfile& B) {
    PairContext ctx = pair_context(A, B);
    int k = ctx.k;

    // Variables are u_i = w_i - 1 >= 0; each index set I caps u(I).
    LinearProgram lp;
    lp.nvars = k;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<Rational> row(k, Rational(0));
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) row[i] = 1;
        Rational cap = ctx.m12 * (Rational(ctx.et.of_set(mask)) - 1 + Rational(1) / ctx.m2) -
                       std::popcount(mask);
        lp.A.push_back(std::move(row));
        lp.b.push_back(cap);
    }
    lp.c.assign(k, Rational(1));

    LpResult opt = solve_lp(lp);
    if (opt.status != LpStatus::optimal)
        throw std::logic_error("weight solver: total-weight program was not solvable");
    std::vector<Rational> u = lex_smallest_optimum(lp);

    WeightFunction w;
    w.k = k;
    for (int i = 0; i < k; ++i) w.w.push_back(u[i] + 1);

    for (int x = 0; x < k; ++x) {
        if (weight_slack(w, x, A, B) != 0)
            throw std::logic_error("weight solver: output failed the exact slack check");
        Rational bound = ctx.m12 / ctx.m2 + ctx.m12 * (ctx.et.of_set(1u << x) - 1);
        if (w.w[x] < 1 || w.w[x] > bound)
            throw std::logic_error("weight solver: output left the feasible box");
    }
    return w;
}

MinimiserReport minimiser_sets(const WeightFunction& w, const RadoProfile& A,
                               const RadoProfile& B) {
    PairContext ctx = pair_context(A, B);
    check_shape(w, ctx.k);
    MinimiserReport rep;
    for (unsigned mask = 1; mask < (1u << ctx.k); ++mask) {
        Rational v = slack_term(ctx, w, mask);
        if (rep.minimisers.empty() || v < rep.min_value) {
            rep.min_value = v;
            rep.minimisers.clear();
        }
        if (v == rep.min_value) rep.minimisers.push_back(mask);
    }
    uint32_t covered = 0;
    for (uint32_t m : rep.minimisers) covered |= m;
    rep.proper = covered == (1u << ctx.k) - 1;
    return rep;
}

BoundednessReport boundedness_audit(const RadoProfile& A, const RadoProfile& B,
                                    const WeightFunction& w, const std::vector<int>& grid,
                                    EnumerationOptions opt) {
    PairContext ctx = pair_context(A, B);
    check_shape(w, ctx.k);
    ProjectionAudit counts = projection_count_audit(A, grid, opt);

    BoundednessReport rep;
    rep.expected = (Rational(1) - Rational(1) / ctx.m2).convert_to<double>();
    for (size_t g = 0; g < counts.grid.size(); ++g) {
        BoundednessPoint pt;
        pt.n = counts.grid[g];
        double ln_n = std::log(static_cast<double>(pt.n));
        bool first = true;
        for (unsigned mask = 1; mask < (1u << ctx.k); ++mask) {
            long long c = counts.rows[mask - 1].counts[g];
            double v = -(w.of_set(mask) / ctx.m12).convert_to<double>() * ln_n +
                       std::log(static_cast<double>(c));
            if (first || v < pt.log_min) {
                pt.log_min = v;
                pt.argmin_mask = mask;
            }
            first = false;
        }
        rep.points.push_back(pt);
    }
    std::vector<double> lx, ly;
    for (const auto& pt : rep.points) {
        lx.push_back(std::log(static_cast<double>(pt.n)));
        ly.push_back(pt.log_min);
    }
    rep.slope = fit_slope(lx, ly);
    rep.deviation = rep.slope - rep.expected;
    return rep;
}

std::string weights_to_json(const WeightFunction& w) {
    std::ostringstream out;
    out << '{';
    for (int i = 0; i < w.k; ++i) {
        if (i) out << ", ";
        out << '"' << i + 1 << "\": \"" << rat_string(w.w[i]) << '"';
    }
    out << '}';
    return out.str();
}

WeightFunction weights_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("weight document: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("weight document must be a JSON object");

    std::map<int, Rational> entries;
    for (const auto& [key, val] : doc.items()) {
        size_t pos = 0;
        int i = 0;
        try {
            i = std::stoi(key, &pos);
        } catch (const std::exception&) {
            throw parse_error("weight key is not an index: " + key);
        }
        if (pos != key.size() || i < 1) throw parse_error("weight key is not an index: " + key);
        if (!val.is_string()) throw parse_error("weight value must be a fraction string");
        entries[i] = parse_rational(val.get<std::string>());
    }
    if (entries.empty()) throw parse_error("weight document is empty");

    WeightFunction w;
    w.k = static_cast<int>(entries.size());
    for (int i = 1; i <= w.k; ++i) {
        auto it = entries.find(i);
        if (it == entries.end())
            throw parse_error("weight keys must cover 1..k with no gaps");
        if (it->second < 1) throw validation_error("weights must be at least 1");
        w.w.push_back(it->second);
    }
    return w;
}

}  // namespace rado
