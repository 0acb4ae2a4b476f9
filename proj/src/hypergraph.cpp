#include "radolab/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "radolab/subsets.hpp"

namespace rado {

namespace {

// Pinned-coordinate solver: picks a column basis P (preferring to pin
// coordinates with unrestricted domains), precomputes the integer matrix
// N = -den * inv(A_P) * A_F, and enumerates the free coordinates.
struct ScanPlan {
    int n = 0, k = 0, rank = 0;
    std::vector<int> pinned, free_coords;
    std::vector<std::vector<long long>> N;  // rank x |free|
    long long den = 1;
    std::vector<std::vector<int>> domains;       // per coordinate; empty = full
    std::vector<std::vector<uint64_t>> members;  // bitmask per restricted coordinate

    bool in_domain(int coord, long long v) const {
        if (v < 1 || v > n) return false;
        const auto& bm = members[coord];
        if (bm.empty()) return true;
        return bm[v >> 6] & (1ull << (v & 63));
    }
};

ScanPlan make_plan(const IntMatrix& A, int n, const std::vector<std::vector<int>>& domains) {
    if (static_cast<int>(domains.size()) != A.cols)
        throw validation_error("scan: need one domain per coordinate");
    ScanPlan plan;
    plan.n = n;
    plan.k = A.cols;
    plan.rank = A.rows;
    plan.domains = domains;

    // Greedy basis: unrestricted coordinates first so free ones stay small.
    std::vector<int> order;
    for (int j = 0; j < A.cols; ++j)
        if (domains[j].empty()) order.push_back(j);
    for (int j = 0; j < A.cols; ++j)
        if (!domains[j].empty()) order.push_back(j);
    IntMatrix sel(A.rows, 0);
    for (int j : order) {
        if (static_cast<int>(plan.pinned.size()) == A.rows) break;
        IntMatrix trial(A.rows, sel.cols + 1);
        for (int i = 0; i < A.rows; ++i) {
            for (int c = 0; c < sel.cols; ++c) trial.at(i, c) = sel.at(i, c);
            trial.at(i, sel.cols) = A.at(i, j);
        }
        if (rank(trial) > sel.cols) {
            sel = std::move(trial);
            plan.pinned.push_back(j);
        }
    }
    if (static_cast<int>(plan.pinned.size()) != A.rows)
        throw validation_error("scan: matrix does not have full row rank");
    std::sort(plan.pinned.begin(), plan.pinned.end());
    for (int j = 0; j < A.cols; ++j)
        if (!std::binary_search(plan.pinned.begin(), plan.pinned.end(), j))
            plan.free_coords.push_back(j);

    // Solve A_P y = -A_f column by column.
    IntMatrix AP = column_submatrix(A, plan.pinned);
    int nf = static_cast<int>(plan.free_coords.size());
    std::vector<std::vector<Rational>> cols(nf);
    Int den = 1;
    for (int f = 0; f < nf; ++f) {
        std::vector<Rational> rhs(A.rows);
        for (int i = 0; i < A.rows; ++i) rhs[i] = Rational(-A.at(i, plan.free_coords[f]));
        auto y = solve_square(AP, rhs);
        if (!y) throw validation_error("scan: pinned columns unexpectedly singular");
        cols[f] = *y;
        for (const auto& r : cols[f]) den = boost::multiprecision::lcm(den, rat_den(r));
    }
    plan.den = den.convert_to<long long>();
    plan.N.assign(A.rows, std::vector<long long>(nf, 0));
    Int mx = 0;
    for (int p = 0; p < A.rows; ++p)
        for (int f = 0; f < nf; ++f) {
            Int v = rat_num(cols[f][p]) * (den / rat_den(cols[f][p]));
            Int av = abs(v);
            if (av > mx) mx = av;
            plan.N[p][f] = v.convert_to<long long>();
        }
    if (mx.convert_to<double>() * n * std::max(nf, 1) > 4.0e18)
        throw validation_error("scan: coefficients too large for 64-bit evaluation");

    plan.members.resize(A.cols);
    for (int j = 0; j < A.cols; ++j) {
        if (domains[j].empty()) continue;
        plan.members[j].assign(static_cast<size_t>(n / 64 + 1), 0);
        for (int v : domains[j]) {
            if (v < 1 || v > n) throw validation_error("scan: domain value out of range");
            plan.members[j][v >> 6] |= 1ull << (v & 63);
        }
    }
    return plan;
}

struct ScanRunner {
    const ScanPlan& plan;
    const std::function<void(const int32_t*)>& visit;
    std::vector<int32_t> x;
    std::vector<std::vector<long long>> acc;  // acc[depth][p]: partial pinned sums

    ScanRunner(const ScanPlan& p, const std::function<void(const int32_t*)>& v)
        : plan(p), visit(v), x(p.k, 0),
          acc(p.free_coords.size() + 1, std::vector<long long>(p.rank, 0)) {}

    void leaf() {
        for (int p = 0; p < plan.rank; ++p) {
            long long num = acc[plan.free_coords.size()][p];
            if (num % plan.den != 0) return;
            long long v = num / plan.den;
            int coord = plan.pinned[p];
            if (!plan.in_domain(coord, v)) return;
            x[coord] = static_cast<int32_t>(v);
        }
        // Distinctness across pinned values and against the free ones.
        for (int a = 0; a < plan.rank; ++a) {
            int32_t va = x[plan.pinned[a]];
            for (int b = a + 1; b < plan.rank; ++b)
                if (va == x[plan.pinned[b]]) return;
            for (int f : plan.free_coords)
                if (va == x[f]) return;
        }
        visit(x.data());
    }

    void rec(size_t depth) {
        if (depth == plan.free_coords.size()) {
            leaf();
            return;
        }
        int coord = plan.free_coords[depth];
        auto step = [&](int v) {
            for (size_t d = 0; d < depth; ++d)
                if (x[plan.free_coords[d]] == v) return;  // free-free repeat
            x[coord] = v;
            for (int p = 0; p < plan.rank; ++p)
                acc[depth + 1][p] = acc[depth][p] + plan.N[p][depth] * v;
            rec(depth + 1);
        };
        if (plan.domains[coord].empty())
            for (int v = 1; v <= plan.n; ++v) step(v);
        else
            for (int v : plan.domains[coord]) step(v);
        x[coord] = 0;
    }
};

bool lex_less(const int32_t* a, const int32_t* b, int k) {
    return std::lexicographical_compare(a, a + k, b, b + k);
}

void sort_edges(std::vector<int32_t>& flat, int k) {
    size_t count = k ? flat.size() / k : 0;
    std::vector<size_t> idx(count);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return lex_less(flat.data() + a * k, flat.data() + b * k, k);
    });
    std::vector<int32_t> out(flat.size());
    for (size_t i = 0; i < count; ++i)
        std::copy_n(flat.data() + idx[i] * k, k, out.data() + i * k);
    flat = std::move(out);
}

void check_index_set(const std::vector<int>& I, int k) {
    if (I.empty()) throw validation_error("projection index set must be nonempty");
    for (size_t i = 0; i < I.size(); ++i) {
        if (I[i] < 0 || I[i] >= k) throw validation_error("projection index out of range");
        if (i > 0 && I[i] <= I[i - 1])
            throw validation_error("projection index set must be strictly ascending");
    }
}

// Sorts `items` (rows of width w) by index and returns (key index, count) runs.
struct GroupedKeys {
    std::vector<int32_t> keys;
    std::vector<long long> counts;
};

GroupedKeys group_rows(const std::vector<int32_t>& rows, int w) {
    GroupedKeys g;
    if (w == 0 || rows.empty()) return g;
    size_t count = rows.size() / w;
    std::vector<size_t> idx(count);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return lex_less(rows.data() + a * w, rows.data() + b * w, w);
    });
    for (size_t i = 0; i < count; ++i) {
        const int32_t* row = rows.data() + idx[i] * w;
        if (i == 0 || !std::equal(row, row + w, &g.keys[g.keys.size() - w])) {
            g.keys.insert(g.keys.end(), row, row + w);
            g.counts.push_back(1);
        } else {
            ++g.counts.back();
        }
    }
    return g;
}

}  // namespace

void scan_solutions(const IntMatrix& A, int n, const std::vector<std::vector<int>>& domains,
                    const std::function<void(const int32_t*)>& visit) {
    if (n < 1) throw validation_error("scan: n must be positive");
    ScanPlan plan = make_plan(A, n, domains);
    ScanRunner runner(plan, visit);
    runner.rec(0);
}

Hypergraph enumerate_solutions(const RadoProfile& A, int n, EnumerationOptions opt) {
    const IntMatrix& M = A.matrix;
    int k = M.cols;
    int free_count = k - M.rows;
    long double estimate = std::pow(static_cast<long double>(n), free_count);
    if (estimate > static_cast<long double>(opt.edge_cap))
        throw budget_error("enumeration estimate " + std::to_string(static_cast<double>(estimate)) +
                           " candidates exceeds cap " + std::to_string(opt.edge_cap));

    Hypergraph h;
    h.n = n;
    h.k = k;
    h.matrix = M;

    std::vector<std::vector<int>> domains(k);
    int workers = std::max(1, opt.workers);
    if (workers == 1 || free_count == 0) {
        scan_solutions(M, n, domains, [&](const int32_t* e) {
            h.flat.insert(h.flat.end(), e, e + k);
        });
    } else {
        // Partition the first free coordinate's range; merge in chunk order.
        ScanPlan probe = make_plan(M, n, domains);
        int first_free = probe.free_coords.front();
        std::vector<std::vector<int32_t>> parts(workers);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            long long lo = 1 + static_cast<long long>(n) * w / workers;
            long long hi = static_cast<long long>(n) * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                auto local = domains;
                for (long long v = lo; v <= hi; ++v) local[first_free].push_back(static_cast<int>(v));
                if (local[first_free].empty()) return;
                scan_solutions(M, n, local, [&](const int32_t* e) {
                    parts[w].insert(parts[w].end(), e, e + k);
                });
            });
        }
        for (auto& t : pool) t.join();
        for (auto& p : parts) h.flat.insert(h.flat.end(), p.begin(), p.end());
    }
    sort_edges(h.flat, k);
    return h;
}

std::string format_edges(const Hypergraph& h) {
    std::ostringstream out;
    for (size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        for (int j = 0; j < h.k; ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
    return out.str();
}

long long Projection::find(std::span<const int32_t> key) const {
    size_t w = key_len(), count = key_count();
    size_t lo = 0, hi = count;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        const int32_t* row = keys_flat.data() + mid * w;
        if (std::lexicographical_compare(row, row + w, key.data(), key.data() + w))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count && std::equal(key.begin(), key.end(), keys_flat.data() + lo * w))
        return static_cast<long long>(lo);
    return -1;
}

long long Projection::total_multiplicity() const {
    return std::accumulate(multiplicity.begin(), multiplicity.end(), 0LL);
}

Projection project(const Hypergraph& h, const std::vector<int>& I) {
    check_index_set(I, h.k);
    int w = static_cast<int>(I.size());
    std::vector<int32_t> rows;
    rows.reserve(h.edge_count() * w);
    for (size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        for (int j : I) rows.push_back(e[j]);
    }
    GroupedKeys g = group_rows(rows, w);
    Projection p;
    p.index_set = I;
    p.keys_flat = std::move(g.keys);
    p.multiplicity = std::move(g.counts);
    return p;
}

std::vector<long long> window_degrees(const Hypergraph& h, const std::vector<int>& I,
                                      const std::vector<int>& W) {
    check_index_set(I, h.k);
    check_index_set(W, h.k);
    std::vector<int> pos;  // positions of I inside W
    for (int i : I) {
        auto it = std::find(W.begin(), W.end(), i);
        if (it == W.end()) throw validation_error("window: I must be contained in W");
        pos.push_back(static_cast<int>(it - W.begin()));
    }
    Projection pw = project(h, W);
    Projection pi = project(h, I);
    std::vector<long long> degs(pi.key_count(), 0);
    std::vector<int32_t> u(I.size());
    for (size_t i = 0; i < pw.key_count(); ++i) {
        auto wk = pw.key(i);
        for (size_t j = 0; j < pos.size(); ++j) u[j] = wk[pos[j]];
        long long at = pi.find(u);
        if (at < 0) throw validation_error("window: projection composition violated");
        ++degs[at];
    }
    return degs;
}

long long degree_in_window(const Hypergraph& h, const std::vector<int>& I,
                           const std::vector<int>& W, const std::vector<int32_t>& u) {
    Projection pi = project(h, I);
    long long at = pi.find(std::span<const int32_t>(u.data(), u.size()));
    if (at < 0) throw validation_error("window: u is not a projection key");
    return window_degrees(h, I, W)[at];
}

Rational tameness_constant(const Hypergraph& h) {
    if (h.edge_count() == 0) throw validation_error("tameness needs a nonempty hypergraph");
    if (h.k > 20) throw validation_error("tameness scan limited to 20 columns");
    Rational best(0);
    for (unsigned wmask = 1; wmask < (1u << h.k); ++wmask) {
        if (std::popcount(wmask) < 2) continue;
        auto W = mask_to_indices(wmask);
        Projection pw = project(h, W);
        for (unsigned imask = (wmask - 1) & wmask; imask; imask = (imask - 1) & wmask) {
            auto I = mask_to_indices(imask);
            std::vector<int> pos;
            for (int i : I) pos.push_back(static_cast<int>(std::find(W.begin(), W.end(), i) - W.begin()));
            std::vector<int32_t> rows;
            rows.reserve(pw.key_count() * I.size());
            for (size_t r = 0; r < pw.key_count(); ++r) {
                auto wk = pw.key(r);
                for (int p : pos) rows.push_back(wk[p]);
            }
            GroupedKeys g = group_rows(rows, static_cast<int>(I.size()));
            long long maxdeg = *std::max_element(g.counts.begin(), g.counts.end());
            Rational cand(Int(maxdeg) * g.counts.size(), Int(pw.key_count()));
            if (cand > best) best = cand;
        }
    }
    return best;
}

UnorderedHypergraph unordered_shadow(const Hypergraph& h) {
    std::vector<int32_t> rows;
    rows.reserve(h.flat.size());
    std::vector<int32_t> buf(h.k);
    for (size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        std::copy(e.begin(), e.end(), buf.begin());
        std::sort(buf.begin(), buf.end());
        rows.insert(rows.end(), buf.begin(), buf.end());
    }
    GroupedKeys g = group_rows(rows, h.k);
    UnorderedHypergraph u;
    u.n = h.n;
    u.k = h.k;
    u.flat = std::move(g.keys);
    return u;
}

CodegreeReport codegree_function(const UnorderedHypergraph& h, const Rational& tau) {
    if (h.edge_count() == 0) throw validation_error("co-degree function needs at least one edge");
    if (tau <= 0 || tau > 1) throw validation_error("co-degree function needs tau in (0,1]");
    long long e = static_cast<long long>(h.edge_count());
    CodegreeReport rep;
    rep.avg_degree = Rational(Int(h.k) * e, Int(h.n));

    for (int j = 2; j <= h.k; ++j) {
        // deg^(j)(v): max count of a j-subset containing v.
        std::vector<int32_t> rows;
        std::vector<int32_t> sub(j);
        for (size_t i = 0; i < h.edge_count(); ++i) {
            auto edge = h.edge(i);
            // All j-subsets of the k sorted vertices.
            std::vector<int> c(j);
            std::iota(c.begin(), c.end(), 0);
            while (true) {
                for (int t = 0; t < j; ++t) rows.push_back(edge[c[t]]);
                int t = j - 1;
                while (t >= 0 && c[t] == h.k - j + t) --t;
                if (t < 0) break;
                ++c[t];
                for (int s = t + 1; s < j; ++s) c[s] = c[s - 1] + 1;
            }
        }
        GroupedKeys g = group_rows(rows, j);
        std::vector<long long> degj(static_cast<size_t>(h.n) + 1, 0);
        for (size_t r = 0; r < g.counts.size(); ++r) {
            const int32_t* key = g.keys.data() + r * j;
            for (int t = 0; t < j; ++t)
                degj[key[t]] = std::max(degj[key[t]], g.counts[r]);
        }
        Int sum = 0;
        for (long long d : degj) sum += d;
        // tau^(j-1) n d with n d = k e exactly.
        rep.delta_j.push_back(Rational(sum, Int(h.k) * e) / rat_pow(tau, j - 1));
    }

    auto binom2 = [](long long t) { return t * (t - 1) / 2; };
    Rational sum(0);
    for (int j = 2; j <= h.k; ++j)
        sum += rep.delta_j[j - 2] * rat_pow(Rational(2), -binom2(j - 1));
    rep.delta = rat_pow(Rational(2), binom2(h.k) - 1) * sum;
    return rep;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw validation_error("slope fit needs at least two points");
    double xm = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    double ym = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - xm) * (y[i] - ym);
        den += (x[i] - xm) * (x[i] - xm);
    }
    if (den == 0) throw validation_error("slope fit needs distinct x values");
    return num / den;
}

ProjectionAudit projection_count_audit(const RadoProfile& A, const std::vector<int>& grid,
                                       EnumerationOptions opt) {
    if (grid.size() < 3) throw validation_error("audit grid needs at least 3 points");
    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || sorted.back() < 4 * sorted.front())
        throw validation_error("audit grid must span at least a factor of 4");

    const IntMatrix& M = A.matrix;
    int k = M.cols;
    if (k > 20) throw validation_error("audit limited to 20 columns");

    ProjectionAudit audit;
    audit.grid = sorted;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        AuditRow row;
        row.I = mask_to_indices(mask);
        row.expected_exponent =
            static_cast<int>(row.I.size()) - A.rank +
            rank(column_submatrix(M, mask_complement_indices(mask, k)));
        audit.rows.push_back(std::move(row));
    }
    for (int n : sorted) {
        Hypergraph h = enumerate_solutions(A, n, opt);
        for (auto& row : audit.rows) {
            Projection p = project(h, row.I);
            row.counts.push_back(static_cast<long long>(p.key_count()));
        }
    }
    std::vector<double> lx;
    for (int n : sorted) lx.push_back(std::log(static_cast<double>(n)));
    for (auto& row : audit.rows) {
        std::vector<double> ly;
        for (long long c : row.counts) {
            if (c <= 0)
                throw validation_error("projection count vanished on the grid; grid too small");
            ly.push_back(std::log(static_cast<double>(c)));
        }
        row.slope = fit_slope(lx, ly);
    }
    return audit;
}

}  // namespace rado
