#include "radolab/int_matrix.hpp"

#include <fstream>
#include <sstream>

namespace rado {

namespace {

struct Token {
    std::string text;
    int line = 0;
};

// Strips '#' comments, returns whitespace-separated tokens with line numbers.
std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> toks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) toks.push_back({t, lineno});
    }
    return toks;
}

Int parse_int_token(const Token& t) {
    try {
        return Int(t.text);
    } catch (const std::runtime_error&) {
        throw parse_error("matrix file: line " + std::to_string(t.line) + ": bad integer token '" +
                          t.text + "'");
    }
}

}  // namespace

IntMatrix parse_matrix(std::istream& in) {
    auto toks = tokenize(in);
    if (toks.size() < 2) throw parse_error("matrix file: missing 'rows cols' header");
    Int r = parse_int_token(toks[0]), c = parse_int_token(toks[1]);
    if (r < 1 || c < 1 || r > 64 || c > 64)
        throw parse_error("matrix file: dimensions out of range: " + r.str() + " x " + c.str());
    IntMatrix m(r.convert_to<int>(), c.convert_to<int>());
    size_t need = static_cast<size_t>(m.rows) * m.cols;
    if (toks.size() - 2 != need)
        throw parse_error("matrix file: expected " + std::to_string(need) + " entries, got " +
                          std::to_string(toks.size() - 2));
    for (size_t i = 0; i < need; ++i) m.a[i] = parse_int_token(toks[i + 2]);
    return m;
}

IntMatrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

IntMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open matrix file: " + path);
    return parse_matrix(in);
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream out;
    out << m.rows << ' ' << m.cols << '\n';
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) out << (j ? " " : "") << m.at(i, j);
        out << '\n';
    }
    return out.str();
}

IntMatrix column_submatrix(const IntMatrix& m, const std::vector<int>& idx) {
    for (size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= m.cols)
            throw validation_error("column index out of range: " + std::to_string(idx[i]));
        if (i > 0 && idx[i] <= idx[i - 1])
            throw validation_error("column indices must be strictly ascending");
    }
    IntMatrix s(m.rows, static_cast<int>(idx.size()));
    for (int i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < idx.size(); ++j) s.at(i, static_cast<int>(j)) = m.at(i, idx[j]);
    return s;
}

int rank(const IntMatrix& mat) {
    IntMatrix m = mat;
    Int prev = 1;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        for (int i = r + 1; i < m.rows; ++i) {
            for (int j = c + 1; j < m.cols; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        ++r;
    }
    return r;
}

std::vector<int> pivot_columns(const IntMatrix& mat) {
    // Same elimination as rank(), but records which columns supplied pivots.
    IntMatrix m = mat;
    Int prev = 1;
    int r = 0;
    std::vector<int> pivots;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        for (int i = r + 1; i < m.rows; ++i) {
            for (int j = c + 1; j < m.cols; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(r, c) - m.at(i, c) * m.at(r, j)) / prev;
            m.at(i, c) = 0;
        }
        prev = m.at(r, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

bool in_rational_span(const IntMatrix& m, const std::vector<Int>& target) {
    if (static_cast<int>(target.size()) != m.rows)
        throw validation_error("span test: target length does not match row count");
    IntMatrix ext(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) ext.at(i, j) = m.at(i, j);
        ext.at(i, m.cols) = target[i];
    }
    return rank(ext) == rank(m);
}

std::optional<std::vector<Rational>> solve_square(const IntMatrix& A, const std::vector<Rational>& b) {
    if (A.rows != A.cols || static_cast<int>(b.size()) != A.rows)
        throw validation_error("solve_square: shape mismatch");
    int n = A.rows;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = Rational(A.at(i, j));
        m[i][n] = b[i];
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        std::swap(m[piv], m[c]);
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (int j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
}

std::vector<Int> column_sum(const IntMatrix& m, const std::vector<int>& idx) {
    std::vector<Int> s(m.rows, Int(0));
    for (int j : idx) {
        if (j < 0 || j >= m.cols) throw validation_error("column index out of range");
        for (int i = 0; i < m.rows; ++i) s[i] += m.at(i, j);
    }
    return s;
}

}  // namespace rado
