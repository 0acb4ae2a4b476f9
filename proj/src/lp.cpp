#include "radolab/lp.hpp"

namespace rado {

namespace {

// Full tableau: m constraint rows plus one objective row, maintained through
// pivots. Columns: structural vars, slacks, artificials, rhs last.
struct Tableau {
    int m, cols;  // cols excludes rhs
    std::vector<std::vector<Rational>> T;  // (m+1) x (cols+1)
    std::vector<int> basis;
    std::vector<char> banned;

    Tableau(int m_, int cols_) : m(m_), cols(cols_),
        T(m_ + 1, std::vector<Rational>(cols_ + 1)), basis(m_), banned(cols_, 0) {}

    Rational& rhs(int i) { return T[i][cols]; }
    std::vector<Rational>& obj() { return T[m]; }

    void pivot(int row, int col) {
        Rational p = T[row][col];
        for (auto& v : T[row]) v /= p;
        for (int i = 0; i <= m; ++i) {
            if (i == row || T[i][col] == 0) continue;
            Rational f = T[i][col];
            for (int j = 0; j <= cols; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    }

    // Maximizes the current objective row. Bland's rule: entering column is
    // the smallest index with positive reduced cost; leaving row has the
    // minimal ratio, ties broken by smallest basis index.
    // Returns false when unbounded.
    bool run() {
        while (true) {
            int enter = -1;
            for (int j = 0; j < cols; ++j)
                if (!banned[j] && obj()[j] > 0) { enter = j; break; }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (T[i][enter] <= 0) continue;
                Rational ratio = rhs(i) / T[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    int m = static_cast<int>(lp.A.size());
    int n = lp.nvars;
    if (static_cast<int>(lp.b.size()) != m || static_cast<int>(lp.c.size()) != n)
        throw validation_error("lp: shape mismatch");
    for (const auto& row : lp.A)
        if (static_cast<int>(row.size()) != n) throw validation_error("lp: shape mismatch");

    // Count artificials: one per negative-rhs row.
    int nart = 0;
    for (const auto& bi : lp.b)
        if (bi < 0) ++nart;

    Tableau t(m, n + m + nart);
    int art = n + m;
    for (int i = 0; i < m; ++i) {
        bool flip = lp.b[i] < 0;
        for (int j = 0; j < n; ++j) t.T[i][j] = flip ? -lp.A[i][j] : lp.A[i][j];
        t.T[i][n + i] = flip ? Rational(-1) : Rational(1);  // slack
        t.rhs(i) = flip ? -lp.b[i] : lp.b[i];
        if (flip) {
            t.T[i][art] = 1;
            t.basis[i] = art++;
        } else {
            t.basis[i] = n + i;
        }
    }

    if (nart > 0) {
        // Phase 1: maximize -sum(artificials). Reduced costs start as the sum
        // of the artificial rows (so basic columns price to zero).
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < n + m) continue;
            for (int j = 0; j <= t.cols; ++j) t.obj()[j] += t.T[i][j];
        }
        for (int j = n + m; j < t.cols; ++j) t.obj()[j] = 0;
        t.run();  // bounded by construction
        Rational infeas = 0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= n + m) infeas += t.rhs(i);
        if (infeas != 0) return {LpStatus::infeasible, Rational(0), {}};
        // Drive artificials out of the basis where possible; ban them.
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < n + m) continue;
            for (int j = 0; j < n + m; ++j)
                if (t.T[i][j] != 0) { t.pivot(i, j); break; }
        }
        for (int j = n + m; j < t.cols; ++j) t.banned[j] = 1;
    }

    // Phase 2: rebuild the objective row for c.
    for (int j = 0; j <= t.cols; ++j) t.obj()[j] = 0;
    for (int j = 0; j < n; ++j) t.obj()[j] = lp.c[j];
    for (int i = 0; i < m; ++i) {
        int bj = t.basis[i];
        if (bj >= n || lp.c[bj] == 0) continue;
        Rational f = lp.c[bj];
        for (int j = 0; j <= t.cols; ++j) t.obj()[j] -= f * t.T[i][j];
    }
    if (!t.run()) return {LpStatus::unbounded, Rational(0), {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.rhs(i);
    for (int j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
    return res;
}

std::vector<Rational> lex_smallest_optimum(const LinearProgram& lp0) {
    LinearProgram lp = lp0;
    LpResult base = solve_lp(lp);
    if (base.status != LpStatus::optimal)
        throw validation_error("lex tie-break needs a feasible bounded program");

    auto pin = [&lp](std::vector<Rational> row, const Rational& value) {
        std::vector<Rational> neg(row.size());
        for (size_t j = 0; j < row.size(); ++j) neg[j] = -row[j];
        lp.A.push_back(std::move(row));
        lp.b.push_back(value);
        lp.A.push_back(std::move(neg));
        lp.b.push_back(-value);
    };
    pin(lp.c, base.objective);

    std::vector<Rational> out(lp.nvars);
    for (int i = 0; i < lp.nvars; ++i) {
        lp.c.assign(lp.nvars, Rational(0));
        lp.c[i] = -1;
        LpResult step = solve_lp(lp);
        if (step.status != LpStatus::optimal)
            throw validation_error("lex tie-break step failed on a pinned program");
        out[i] = step.x[i];
        std::vector<Rational> unit(lp.nvars, Rational(0));
        unit[i] = 1;
        pin(std::move(unit), out[i]);
    }
    return out;
}

}  // namespace rado
