#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radolab/int_matrix.hpp"

namespace rado {

// Raised when an asymmetric density call has its arguments in the wrong order.
struct ordering_error : validation_error {
    using validation_error::validation_error;
};

// Ordered partition C_1,...,C_t of the column indices (0-based): the columns in
// C_1 sum to zero, and each later block's column sum lies in the rational span
// of all columns in earlier blocks.
struct ColumnsCertificate {
    std::vector<std::vector<int>> blocks;
};

// Exhaustive search: a certificate exists iff one is returned. C_1 candidates
// are tried by increasing size; the remainder is completed greedily, taking a
// maximal in-span block each round (always safe: any in-span block taken first
// leaves the rest completable iff it was completable before).
std::optional<ColumnsCertificate> columns_condition(const IntMatrix& A);
bool verify_columns_condition(const IntMatrix& A, const ColumnsCertificate& cert);
std::string format_certificate(const ColumnsCertificate& cert);  // 1-based, "{1,3} | {2}"

enum class SearchVerdict { confirmed, refuted_up_to_bound, unknown };

struct IrredundancyReport {
    SearchVerdict verdict = SearchVerdict::unknown;
    std::vector<long long> witness;  // lexicographically least solution when confirmed
    long long search_bound = 0;
};

long long default_irredundancy_bound(const IntMatrix& A);  // 5k(1 + max |entry|)

// Bounded search for x in [1, search_bound]^k with Ax = 0 and pairwise
// distinct entries. Refutation is only up to the bound (semi-decision).
IrredundancyReport check_irredundant(const IntMatrix& A, long long search_bound = 0);

struct RadoProfile {
    IntMatrix matrix;     // after repair: full row rank
    IntMatrix original;
    int rank = 0;
    int dropped_rows = 0;  // dependent rows removed by the repair
    bool partition_regular = false;
    std::optional<ColumnsCertificate> certificate;
    IrredundancyReport irredundancy;
    std::optional<Rational> m;        // set iff partition-regular and irredundancy confirmed
    std::vector<int> m_maximiser;     // a maximising W for m (0-based)

    bool rado_valid() const {
        return partition_regular && irredundancy.verdict == SearchVerdict::confirmed;
    }
};

// Validates A: repairs row rank, runs the certificate search and the bounded
// irredundancy search, computes the density when the premises hold.
RadoProfile make_profile(const IntMatrix& A, long long irredundancy_bound = 0);

struct DensityResult {
    Rational value;
    std::vector<int> maximiser;  // W, 0-based
};

// max over W with |W| >= 2 of (|W|-1) / (|W|-1 + rk A_{W-bar} - rk A).
DensityResult m_density(const RadoProfile& A);

// max over W subsets of A's columns, |W| >= 2, of
//   |W| / (|W| - rk A + rk A_{W-bar} - 1 + 1/m(B)).
// Requires m(A) >= m(B); otherwise raises ordering_error.
DensityResult m_asym(const RadoProfile& A, const RadoProfile& B);

IntMatrix diag_block_matrix(const std::vector<IntMatrix>& blocks);
RadoProfile diag_block(const std::vector<RadoProfile>& profiles);

// Built-in catalogue: "schur", "ap3".."ap9", "diag(a,b,...)" of catalogue
// names; anything else is treated as a matrix file path.
IntMatrix catalogue_matrix(const std::string& name);
bool is_catalogue_name(const std::string& name);

}  // namespace rado
