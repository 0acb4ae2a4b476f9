#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "radolab/rational.hpp"

namespace rado {

// Dense integer matrix, row major. Rows are equations, columns are variables.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const IntMatrix&) const = default;
};

// Text format: header "rows cols", then rows*cols integers in row-major order,
// whitespace separated. '#' starts a comment running to end of line.
IntMatrix parse_matrix(std::istream& in);
IntMatrix parse_matrix_text(const std::string& text);
IntMatrix load_matrix_file(const std::string& path);
std::string format_matrix(const IntMatrix& m);

// Columns of `m` selected by strictly ascending 0-based indices. An empty
// selection yields a rows x 0 matrix (rank 0).
IntMatrix column_submatrix(const IntMatrix& m, const std::vector<int>& idx);

// Exact rank via fraction-free (Bareiss) elimination with column skipping.
int rank(const IntMatrix& m);

// Is `target` in the rational span of the columns of `m`?
bool in_rational_span(const IntMatrix& m, const std::vector<Int>& target);

// Exact solve of A x = b for square nonsingular A; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(const IntMatrix& A, const std::vector<Rational>& b);

// First set of column indices (ascending, size rank(m)) whose submatrix has
// full column rank; greedy left to right.
std::vector<int> pivot_columns(const IntMatrix& m);

std::vector<Int> column_sum(const IntMatrix& m, const std::vector<int>& idx);

}  // namespace rado
