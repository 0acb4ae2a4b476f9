#include "radolab/rado.hpp"

#include <algorithm>
#include <sstream>

#include "radolab/subsets.hpp"

namespace rado {

namespace {

bool is_zero(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

// Greedy completion after C_1: each round takes a largest subset of the
// remaining columns whose sum lies in the span of the columns already used.
// Taking any in-span block first leaves a completable remainder completable,
// so no backtracking across rounds is needed.
std::optional<std::vector<std::vector<int>>> complete_greedily(const IntMatrix& A, unsigned first) {
    int k = A.cols;
    std::vector<std::vector<int>> blocks{mask_to_indices(first)};
    unsigned used = first;
    unsigned all = (k == 32) ? ~0u : ((1u << k) - 1);
    while (used != all) {
        unsigned rest = all & ~used;
        IntMatrix span_cols = column_submatrix(A, mask_to_indices(used));
        unsigned best = 0;
        for (unsigned sub = rest; sub; sub = (sub - 1) & rest) {
            if (std::popcount(sub) <= std::popcount(best)) continue;
            if (in_rational_span(span_cols, column_sum(A, mask_to_indices(sub)))) best = sub;
        }
        if (!best) return std::nullopt;
        blocks.push_back(mask_to_indices(best));
        used |= best;
    }
    return blocks;
}

}  // namespace

std::optional<ColumnsCertificate> columns_condition(const IntMatrix& A) {
    if (A.cols > 20) throw validation_error("columns condition search limited to 20 columns");
    for (unsigned mask : masks_by_size(A.cols, 1)) {
        if (!is_zero(column_sum(A, mask_to_indices(mask)))) continue;
        if (auto blocks = complete_greedily(A, mask)) return ColumnsCertificate{*blocks};
    }
    return std::nullopt;
}

bool verify_columns_condition(const IntMatrix& A, const ColumnsCertificate& cert) {
    if (cert.blocks.empty()) return false;
    std::vector<char> seen(A.cols, 0);
    std::vector<int> earlier;
    for (size_t b = 0; b < cert.blocks.size(); ++b) {
        const auto& blk = cert.blocks[b];
        if (blk.empty()) return false;
        for (int j : blk) {
            if (j < 0 || j >= A.cols || seen[j]) return false;
            seen[j] = 1;
        }
        auto sum = column_sum(A, [&] {
            auto s = blk;
            std::sort(s.begin(), s.end());
            return s;
        }());
        if (b == 0) {
            if (!is_zero(sum)) return false;
        } else {
            std::sort(earlier.begin(), earlier.end());
            if (!in_rational_span(column_submatrix(A, earlier), sum)) return false;
        }
        earlier.insert(earlier.end(), blk.begin(), blk.end());
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::string format_certificate(const ColumnsCertificate& cert) {
    std::ostringstream out;
    for (size_t b = 0; b < cert.blocks.size(); ++b) {
        if (b) out << " | ";
        out << '{';
        for (size_t i = 0; i < cert.blocks[b].size(); ++i)
            out << (i ? "," : "") << cert.blocks[b][i] + 1;
        out << '}';
    }
    return out.str();
}

long long default_irredundancy_bound(const IntMatrix& A) {
    Int mx = 0;
    for (const Int& v : A.a) {
        Int av = abs(v);
        if (av > mx) mx = av;
    }
    return 5LL * A.cols * (1 + mx.convert_to<long long>());
}

namespace {

// DFS over coordinates in index order, values ascending, with forced-value
// propagation: a row whose support has one unassigned coordinate pins it. The
// first solution found is therefore the lexicographically least one.
struct IrredundancySearch {
    const IntMatrix& A;
    long long bound;
    int k;
    std::vector<std::vector<int>> row_support;
    std::vector<long long> x;        // 0 = unassigned
    std::vector<Int> row_sum;        // over assigned coordinates
    std::vector<int> row_unassigned;

    explicit IrredundancySearch(const IntMatrix& a, long long b)
        : A(a), bound(b), k(a.cols), x(a.cols, 0), row_sum(a.rows, Int(0)),
          row_unassigned(a.rows, 0) {
        row_support.resize(A.rows);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < k; ++j)
                if (A.at(i, j) != 0) row_support[i].push_back(j);
        for (int i = 0; i < A.rows; ++i) row_unassigned[i] = static_cast<int>(row_support[i].size());
    }

    bool value_used(long long v) const {
        return std::find(x.begin(), x.end(), v) != x.end();
    }

    bool assign(int j, long long v, std::vector<int>& trail) {
        x[j] = v;
        trail.push_back(j);
        bool ok = true;
        for (int i = 0; i < A.rows; ++i) {
            if (A.at(i, j) == 0) continue;
            row_sum[i] += A.at(i, j) * v;
            if (--row_unassigned[i] == 0 && row_sum[i] != 0) ok = false;
        }
        return ok;
    }

    void undo(std::vector<int>& trail, size_t mark) {
        while (trail.size() > mark) {
            int j = trail.back();
            trail.pop_back();
            for (int i = 0; i < A.rows; ++i) {
                if (A.at(i, j) == 0) continue;
                row_sum[i] -= A.at(i, j) * x[j];
                ++row_unassigned[i];
            }
            x[j] = 0;
        }
    }

    // Assigns every coordinate forced by a single-unassigned row; false on conflict.
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < A.rows; ++i) {
                if (row_unassigned[i] != 1) continue;
                int j = -1;
                for (int c : row_support[i])
                    if (x[c] == 0) { j = c; break; }
                Int num = -row_sum[i];
                const Int& coeff = A.at(i, j);
                if (num % coeff != 0) return false;
                Int v = num / coeff;
                if (v < 1 || v > bound || value_used(v.convert_to<long long>())) return false;
                if (!assign(j, v.convert_to<long long>(), trail)) return false;
                changed = true;
            }
        }
        return true;
    }

    bool dfs() {
        int j = -1;
        for (int c = 0; c < k; ++c)
            if (x[c] == 0) { j = c; break; }
        if (j < 0) {
            for (int i = 0; i < A.rows; ++i)
                if (row_sum[i] != 0) return false;
            return true;
        }
        for (long long v = 1; v <= bound; ++v) {
            if (value_used(v)) continue;
            std::vector<int> trail;
            if (assign(j, v, trail) && propagate(trail) && dfs()) return true;
            undo(trail, 0);
        }
        return false;
    }
};

}  // namespace

IrredundancyReport check_irredundant(const IntMatrix& A, long long search_bound) {
    if (search_bound <= 0) search_bound = default_irredundancy_bound(A);
    IrredundancySearch s(A, search_bound);
    IrredundancyReport rep;
    rep.search_bound = search_bound;
    if (s.dfs()) {
        rep.verdict = SearchVerdict::confirmed;
        rep.witness = s.x;
    } else {
        rep.verdict = SearchVerdict::refuted_up_to_bound;
    }
    return rep;
}

namespace {

DensityResult m_density_raw(const IntMatrix& A) {
    int k = A.cols, rk = rank(A);
    std::optional<DensityResult> best;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        int w = std::popcount(mask);
        if (w < 2) continue;
        int rk_rest = rank(column_submatrix(A, mask_complement_indices(mask, k)));
        Int den = Int(w) - 1 + rk_rest - rk;
        if (den <= 0)
            throw validation_error("density denominator nonpositive at W = " +
                                   format_certificate({{mask_to_indices(mask)}}));
        Rational val(Int(w) - 1, den);
        if (!best || val > best->value) best = DensityResult{val, mask_to_indices(mask)};
    }
    if (!best) throw validation_error("density needs at least 2 columns");
    return *best;
}

}  // namespace

RadoProfile make_profile(const IntMatrix& A, long long irredundancy_bound) {
    RadoProfile p;
    p.original = A;
    // Repair: keep rows that grow the rank; dependent rows do not change the
    // solution set.
    IntMatrix kept(0, A.cols);
    kept.rows = 0;
    for (int i = 0; i < A.rows; ++i) {
        IntMatrix trial(kept.rows + 1, A.cols);
        trial.a = kept.a;
        trial.a.insert(trial.a.end(), A.a.begin() + static_cast<size_t>(i) * A.cols,
                       A.a.begin() + static_cast<size_t>(i + 1) * A.cols);
        if (rank(trial) > kept.rows) kept = std::move(trial);
    }
    p.dropped_rows = A.rows - kept.rows;
    if (kept.rows == 0) throw validation_error("matrix has rank 0; no equations to profile");
    p.matrix = std::move(kept);
    p.rank = p.matrix.rows;
    p.certificate = columns_condition(p.matrix);
    p.partition_regular = p.certificate.has_value();
    p.irredundancy = check_irredundant(p.matrix, irredundancy_bound);
    if (p.rado_valid()) {
        auto d = m_density_raw(p.matrix);
        p.m = d.value;
        p.m_maximiser = d.maximiser;
    }
    return p;
}

DensityResult m_density(const RadoProfile& A) {
    if (!A.partition_regular)
        throw validation_error("density requires a partition-regular matrix");
    if (A.irredundancy.verdict != SearchVerdict::confirmed)
        throw validation_error("density requires confirmed irredundancy");
    return m_density_raw(A.matrix);
}

DensityResult m_asym(const RadoProfile& A, const RadoProfile& B) {
    Rational mA = m_density(A).value;
    Rational mB = m_density(B).value;
    if (mA < mB)
        throw ordering_error("density order violated: m(first) = " + rat_string(mA) +
                             " < m(second) = " + rat_string(mB) + "; swap the arguments");
    const IntMatrix& M = A.matrix;
    int k = M.cols, rk = A.rank;
    std::optional<DensityResult> best;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        int w = std::popcount(mask);
        if (w < 2) continue;
        int rk_rest = rank(column_submatrix(M, mask_complement_indices(mask, k)));
        Rational den = Rational(Int(w) - rk + rk_rest - 1) + Rational(1) / mB;
        if (den <= 0)
            throw validation_error("asymmetric density denominator nonpositive");
        Rational val = Rational(w) / den;
        if (!best || val > best->value) best = DensityResult{val, mask_to_indices(mask)};
    }
    if (!best) throw validation_error("asymmetric density needs at least 2 columns");
    return *best;
}

IntMatrix diag_block_matrix(const std::vector<IntMatrix>& blocks) {
    if (blocks.empty()) throw validation_error("diag_block needs at least one block");
    int rows = 0, cols = 0;
    for (const auto& b : blocks) { rows += b.rows; cols += b.cols; }
    IntMatrix m(rows, cols);
    int r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
        r0 += b.rows;
        c0 += b.cols;
    }
    return m;
}

RadoProfile diag_block(const std::vector<RadoProfile>& profiles) {
    if (profiles.empty()) throw validation_error("diag_block needs at least one profile");
    for (const auto& p : profiles)
        if (!p.partition_regular)
            throw validation_error("diag_block requires partition-regular blocks");
    if (profiles.size() == 1) return profiles[0];
    std::vector<IntMatrix> mats;
    for (const auto& p : profiles) mats.push_back(p.matrix);
    return make_profile(diag_block_matrix(mats));
}

bool is_catalogue_name(const std::string& name) {
    if (name == "schur") return true;
    if (name.size() == 3 && name[0] == 'a' && name[1] == 'p' && name[2] >= '3' && name[2] <= '9')
        return true;
    return name.rfind("diag(", 0) == 0 && name.back() == ')';
}

IntMatrix catalogue_matrix(const std::string& name) {
    if (name == "schur") return parse_matrix_text("1 3\n1 1 -1\n");
    if (name.size() == 3 && name[0] == 'a' && name[1] == 'p' && name[2] >= '3' && name[2] <= '9') {
        int l = name[2] - '0';
        IntMatrix m(l - 2, l);
        for (int i = 0; i < l - 2; ++i) {
            m.at(i, i) = 1;
            m.at(i, i + 1) = -2;
            m.at(i, i + 2) = 1;
        }
        return m;
    }
    if (name.rfind("diag(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(5, name.size() - 6);
        std::vector<IntMatrix> parts;
        size_t pos = 0;
        while (pos <= inner.size()) {
            size_t comma = inner.find(',', pos);
            std::string part = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (part.empty()) throw parse_error("empty block name in " + name);
            parts.push_back(catalogue_matrix(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return diag_block_matrix(parts);
    }
    return load_matrix_file(name);
}

}  // namespace rado
