#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "radolab/hypergraph.hpp"
#include "radolab/subsets.hpp"

using namespace rado;

namespace {

// Independent oracle: scan all of [n]^k, keep exact solutions with pairwise
// distinct entries, sorted lexicographically.
std::vector<int32_t> brute_force_edges(const IntMatrix& A, int n) {
    int k = A.cols;
    std::vector<int32_t> out;
    std::vector<int> x(k, 1);
    while (true) {
        bool distinct = true;
        for (int a = 0; a < k && distinct; ++a)
            for (int b = a + 1; b < k; ++b)
                if (x[a] == x[b]) { distinct = false; break; }
        if (distinct) {
            bool solves = true;
            for (int i = 0; i < A.rows && solves; ++i) {
                Int s = 0;
                for (int j = 0; j < k; ++j) s += A.at(i, j) * x[j];
                solves = (s == 0);
            }
            if (solves)
                for (int j = 0; j < k; ++j) out.push_back(x[j]);
        }
        int j = k - 1;
        while (j >= 0 && x[j] == n) { x[j] = 1; --j; }
        if (j < 0) break;
        ++x[j];
    }
    return out;  // odometer order over tuples = lexicographic
}

Hypergraph enumerate(const std::string& name, int n, EnumerationOptions opt = {}) {
    return enumerate_solutions(make_profile(catalogue_matrix(name)), n, opt);
}

}  // namespace

TEST_CASE("edge counts frozen from the brute-force oracle") {
    auto schur_profile = make_profile(catalogue_matrix("schur"));
    auto ap3_profile = make_profile(catalogue_matrix("ap3"));

    CHECK(brute_force_edges(schur_profile.matrix, 10).size() / 3 == 40);
    CHECK(enumerate_solutions(schur_profile, 10).edge_count() == 40);
    CHECK(enumerate_solutions(schur_profile, 2).edge_count() == 0);
    CHECK(enumerate_solutions(schur_profile, 9).edge_count() == 32);

    // Progressions (a, a+d, a+2d), d != 0, inside [n]: 8 for n=5, 12 for n=6.
    CHECK(brute_force_edges(ap3_profile.matrix, 5).size() / 3 == 8);
    CHECK(enumerate_solutions(ap3_profile, 5).edge_count() == 8);
    CHECK(enumerate_solutions(ap3_profile, 6).edge_count() == 12);
}

TEST_CASE("enumeration matches the oracle exactly") {
    for (int n = 2; n <= 25; ++n) {
        CHECK(enumerate("schur", n).flat == brute_force_edges(catalogue_matrix("schur"), n));
        CHECK(enumerate("ap3", n).flat == brute_force_edges(catalogue_matrix("ap3"), n));
    }
    for (int n = 2; n <= 14; ++n)
        CHECK(enumerate("ap4", n).flat == brute_force_edges(catalogue_matrix("ap4"), n));
    for (int n = 2; n <= 8; ++n)
        CHECK(enumerate("diag(schur,schur)", n).flat ==
              brute_force_edges(catalogue_matrix("diag(schur,schur)"), n));
}

TEST_CASE("edge invariants") {
    Hypergraph h = enumerate("schur", 40);
    const IntMatrix& A = h.matrix;
    for (size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        for (int j = 0; j < h.k; ++j) {
            CHECK(e[j] >= 1);
            CHECK(e[j] <= h.n);
        }
        CHECK(e[0] + e[1] == e[2]);
        CHECK(e[0] != e[1]);
        for (int r = 0; r < A.rows; ++r) {
            Int s = 0;
            for (int j = 0; j < h.k; ++j) s += A.at(r, j) * e[j];
            CHECK(s == 0);
        }
        if (i > 0) {
            auto prev = h.edge(i - 1);
            CHECK(std::lexicographical_compare(prev.begin(), prev.end(), e.begin(), e.end()));
        }
    }
}

TEST_CASE("edge dump golden") {
    CHECK(format_edges(enumerate("schur", 5)) ==
          "1 2 3\n1 3 4\n1 4 5\n2 1 3\n2 3 5\n3 1 4\n3 2 5\n4 1 5\n");
}

TEST_CASE("memory guard refuses oversized enumerations") {
    EnumerationOptions opt;
    opt.edge_cap = 1'000'000;
    CHECK_THROWS_AS(enumerate("schur", 2000, opt), budget_error);
    opt.edge_cap = 100'000'000;
    CHECK_NOTHROW(enumerate("schur", 100, opt));
}

TEST_CASE("worker count does not change the result") {
    Hypergraph base = enumerate("schur", 100);
    for (int w : {2, 3, 7}) {
        EnumerationOptions opt;
        opt.workers = w;
        CHECK(enumerate("schur", 100, opt).flat == base.flat);
    }
}

TEST_CASE("projections of the Schur hypergraph at n=10") {
    Hypergraph h = enumerate("schur", 10);

    Projection p3 = project(h, {2});
    CHECK(p3.key_count() == 8);  // values 3..10
    CHECK(p3.key(0)[0] == 3);
    CHECK(p3.key(7)[0] == 10);
    CHECK(p3.multiplicity[7] == 8);  // ordered pairs summing to 10
    CHECK(p3.total_multiplicity() == 40);

    Projection full = project(h, {0, 1, 2});
    CHECK(full.key_count() == h.edge_count());
    CHECK(std::all_of(full.multiplicity.begin(), full.multiplicity.end(),
                      [](long long m) { return m == 1; }));

    CHECK_THROWS_AS(project(h, {}), validation_error);
    CHECK_THROWS_AS(project(h, {0, 0}), validation_error);
    CHECK_THROWS_AS(project(h, {3}), validation_error);
}

TEST_CASE("projection multiplicities sum to the edge count") {
    Hypergraph h = enumerate("ap4", 12);
    for (unsigned mask = 1; mask < (1u << h.k); ++mask)
        CHECK(project(h, mask_to_indices(mask)).total_multiplicity() ==
              static_cast<long long>(h.edge_count()));
}

TEST_CASE("projection composition") {
    Hypergraph h = enumerate("schur", 15);
    for (unsigned wmask = 1; wmask < (1u << h.k); ++wmask) {
        auto W = mask_to_indices(wmask);
        Projection pw = project(h, W);
        for (unsigned imask = (wmask - 1) & wmask; imask; imask = (imask - 1) & wmask) {
            auto I = mask_to_indices(imask);
            std::vector<int> pos;
            for (int i : I) pos.push_back(static_cast<int>(std::find(W.begin(), W.end(), i) - W.begin()));
            std::vector<int32_t> restricted;
            for (size_t r = 0; r < pw.key_count(); ++r)
                for (int p : pos) restricted.push_back(pw.key(r)[p]);
            std::vector<std::vector<int32_t>> keys;
            for (size_t r = 0; r < pw.key_count(); ++r)
                keys.emplace_back(restricted.begin() + r * I.size(),
                                  restricted.begin() + (r + 1) * I.size());
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

            Projection pi = project(h, I);
            REQUIRE(pi.key_count() == keys.size());
            for (size_t r = 0; r < keys.size(); ++r)
                CHECK(std::equal(keys[r].begin(), keys[r].end(), pi.key(r).begin()));
        }
    }
}

TEST_CASE("window degrees") {
    Hypergraph h = enumerate("schur", 10);
    CHECK(degree_in_window(h, {2}, {0, 2}, {10}) == 8);
    CHECK(degree_in_window(h, {0}, {0, 1, 2}, {1}) == 8);
    CHECK(degree_in_window(h, {2}, {2}, {10}) == 1);  // degenerate window W = I
    CHECK_THROWS_AS(degree_in_window(h, {2}, {0, 2}, {1}), validation_error);
    CHECK_THROWS_AS(degree_in_window(h, {1}, {0, 2}, {5}), validation_error);
}

TEST_CASE("tameness constant") {
    Hypergraph single;
    single.n = 3;
    single.k = 3;
    single.matrix = catalogue_matrix("schur");
    single.flat = {1, 2, 3};
    CHECK(tameness_constant(single) == Rational(1));

    Hypergraph empty;
    empty.n = 2;
    empty.k = 3;
    empty.matrix = catalogue_matrix("schur");
    CHECK_THROWS_AS(tameness_constant(empty), validation_error);
}

TEST_CASE("tameness certifies the squared-degree bound") {
    for (int n : {10, 30}) {
        Hypergraph h = enumerate("schur", n);
        Rational K = tameness_constant(h);
        CHECK(K >= 1);
        for (unsigned wmask = 1; wmask < (1u << h.k); ++wmask) {
            if (std::popcount(wmask) < 2) continue;
            auto W = mask_to_indices(wmask);
            for (unsigned imask = (wmask - 1) & wmask; imask; imask = (imask - 1) & wmask) {
                auto I = mask_to_indices(imask);
                auto degs = window_degrees(h, I, W);
                Int sq = 0;
                for (long long d : degs) sq += Int(d) * d;
                Int hw(project(h, W).key_count()), hi(project(h, I).key_count());
                // sum deg^2 <= K^2 |H_W|^2 / |H_I|
                CHECK(Rational(sq) <= K * K * Rational(hw * hw, hi));
            }
        }
    }
}

TEST_CASE("tameness stays bounded as n grows") {
    std::vector<double> xs, ys;
    Rational prev(0);
    for (int n : {50, 100, 200}) {
        Rational K = tameness_constant(enumerate("schur", n));
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(K.convert_to<double>()));
    }
    CHECK(std::abs(fit_slope(xs, ys)) < 0.2);
}

TEST_CASE("unordered shadow deduplicates") {
    Hypergraph h = enumerate("schur", 10);
    UnorderedHypergraph u = unordered_shadow(h);
    CHECK(u.edge_count() == 20);  // each {x1,x2,x3} arises from exactly 2 ordered tuples
    for (size_t i = 0; i < u.edge_count(); ++i) {
        auto e = u.edge(i);
        CHECK(e[0] < e[1]);
        CHECK(e[1] < e[2]);
    }
}

TEST_CASE("co-degree function on a single edge") {
    UnorderedHypergraph single;
    single.n = 3;
    single.k = 3;
    single.flat = {1, 2, 3};
    Rational tau(2, 5);
    CodegreeReport rep = codegree_function(single, tau);
    CHECK(rep.delta_j[0] == Rational(5, 2));   // 1/tau
    CHECK(rep.delta_j[1] == Rational(25, 4));  // 1/tau^2
    CHECK(rep.delta == Rational(45, 2));       // 4/tau + 2/tau^2
    CHECK(rep.avg_degree == Rational(1));

    CodegreeReport unit = codegree_function(single, Rational(1));
    CHECK(unit.delta_j[0] == Rational(1));
    CHECK(unit.delta_j[1] == Rational(1));
}

TEST_CASE("co-degree validation") {
    UnorderedHypergraph empty;
    empty.n = 3;
    empty.k = 3;
    CHECK_THROWS_AS(codegree_function(empty, Rational(1, 2)), validation_error);
    UnorderedHypergraph single;
    single.n = 3;
    single.k = 3;
    single.flat = {1, 2, 3};
    CHECK_THROWS_AS(codegree_function(single, Rational(0)), validation_error);
    CHECK_THROWS_AS(codegree_function(single, Rational(3, 2)), validation_error);
}

TEST_CASE("co-degree decreases in the threshold constant") {
    UnorderedHypergraph u = unordered_shadow(enumerate("ap3", 100));
    // tau = C' * 100^(-1/2) = C'/10 for C' = 1, 2, 4.
    Rational d1 = codegree_function(u, Rational(1, 10)).delta;
    Rational d2 = codegree_function(u, Rational(2, 10)).delta;
    Rational d4 = codegree_function(u, Rational(4, 10)).delta;
    CHECK(d1 > d2);
    CHECK(d2 > d4);
}

TEST_CASE("projection count audit recovers the structural exponents") {
    auto schur = make_profile(catalogue_matrix("schur"));
    ProjectionAudit audit = projection_count_audit(schur, {100, 200, 400});
    for (const auto& row : audit.rows) {
        CAPTURE(row.I);
        if (row.I == std::vector<int>{2}) {
            CHECK(row.expected_exponent == 1);
            CHECK(row.counts == std::vector<long long>{98, 198, 398});
        }
        if (row.I == std::vector<int>{0, 1, 2}) CHECK(row.expected_exponent == 2);
        CHECK(std::abs(row.slope - row.expected_exponent) < 0.1);
    }

    auto ap3 = make_profile(catalogue_matrix("ap3"));
    ProjectionAudit audit3 = projection_count_audit(ap3, {100, 200, 400});
    for (const auto& row : audit3.rows)
        CHECK(std::abs(row.slope - row.expected_exponent) < 0.1);
}

TEST_CASE("audit validates its grid") {
    auto schur = make_profile(catalogue_matrix("schur"));
    CHECK_THROWS_AS(projection_count_audit(schur, {100, 200}), validation_error);
    CHECK_THROWS_AS(projection_count_audit(schur, {100, 150, 200}), validation_error);
}

TEST_CASE("window degrees grow no faster than the structural exponent") {
    auto schur = make_profile(catalogue_matrix("schur"));
    const IntMatrix& A = schur.matrix;
    int k = A.cols;
    std::vector<int> grid = {50, 100, 200};
    for (unsigned wmask = 1; wmask < (1u << k); ++wmask) {
        if (std::popcount(wmask) < 2) continue;
        auto W = mask_to_indices(wmask);
        for (unsigned imask = (wmask - 1) & wmask; imask; imask = (imask - 1) & wmask) {
            auto I = mask_to_indices(imask);
            int expo = static_cast<int>(W.size() - I.size()) -
                       rank(column_submatrix(A, mask_complement_indices(imask, k))) +
                       rank(column_submatrix(A, mask_complement_indices(wmask, k)));
            std::vector<double> xs, ys;
            for (int n : grid) {
                auto degs = window_degrees(enumerate("schur", n), I, W);
                long long mx = *std::max_element(degs.begin(), degs.end());
                xs.push_back(std::log(static_cast<double>(n)));
                ys.push_back(std::log(static_cast<double>(mx)));
            }
            CAPTURE(I);
            CAPTURE(W);
            // Max degree can be flat (slope 0) but must not outgrow n^expo.
            CHECK(fit_slope(xs, ys) < expo + 0.2);
        }
    }
}
