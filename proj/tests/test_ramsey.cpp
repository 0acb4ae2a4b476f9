#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "radolab/hypergraph.hpp"
#include "radolab/ramsey.hpp"

using namespace rado;

namespace {

RadoProfile profile_of(const std::string& name) { return make_profile(catalogue_matrix(name)); }

RamseyInstance instance(int n, const std::vector<std::string>& names) {
    RamseyInstance inst;
    inst.ground = ground_range(n);
    for (const auto& nm : names) inst.matrices.push_back(profile_of(nm));
    return inst;
}

// Oracle: walk all r^m colourings, looking for one with no monochromatic
// solution in any colour.
bool naive_arrows(const RamseyInstance& inst) {
    int m = static_cast<int>(inst.ground.size());
    int r = static_cast<int>(inst.matrices.size());
    std::vector<int> col(m, 0);
    while (true) {
        bool good = true;
        for (int i = 0; i < r && good; ++i)
            good = count_monochromatic(inst.ground, col, inst.matrices[i], i) == 0;
        if (good) return false;
        int j = 0;
        while (j < m && col[j] == r - 1) col[j++] = 0;
        if (j == m) return true;
        ++col[j];
    }
}

long long naive_supersaturation(int n, int r, const RadoProfile& A) {
    auto ground = ground_range(n);
    std::vector<int> col(n, 0);
    long long best = -1;
    while (true) {
        long long worst = 0;
        for (int i = 0; i < r; ++i)
            worst = std::max(worst, count_monochromatic(ground, col, A, i));
        if (best < 0 || worst < best) best = worst;
        int j = 0;
        while (j < n && col[j] == r - 1) col[j++] = 0;
        if (j == n) return best;
        ++col[j];
    }
}

}  // namespace

TEST_CASE("single-class counts match the enumerated hypergraph") {
    auto schur = profile_of("schur");
    for (int n : {5, 7, 9, 12}) {
        CAPTURE(n);
        auto h = enumerate_solutions(schur, n);
        std::vector<int> all(n, 0);
        CHECK(count_monochromatic(ground_range(n), all, schur, 0) ==
              static_cast<long long>(h.edge_count()));
    }
    std::vector<int> all9(9, 0);
    CHECK(count_monochromatic(ground_range(9), all9, schur, 0) == 32);
}

TEST_CASE("the classic eight-element split has no monochromatic sums") {
    auto schur = profile_of("schur");
    // elements 1,2,4,8 in the first class, 3,5,6,7 in the second
    std::vector<int> col = {0, 0, 1, 0, 1, 1, 1, 0};
    CHECK(count_monochromatic(ground_range(8), col, schur, 0) == 0);
    CHECK(count_monochromatic(ground_range(8), col, schur, 1) == 0);
    CHECK(count_monochromatic(ground_range(8), col, schur, 2) == 0);  // empty class
}

TEST_CASE("classes smaller than the tuple width count zero") {
    auto schur = profile_of("schur");
    std::vector<int> col = {0, 0, 1, 1, 1};
    CHECK(count_monochromatic(ground_range(5), col, schur, 0) == 0);
}

TEST_CASE("monochromatic counting validates its input") {
    auto schur = profile_of("schur");
    CHECK_THROWS_AS(count_monochromatic({2, 1, 3}, {0, 0, 0}, schur, 0), validation_error);
    CHECK_THROWS_AS(count_monochromatic({1, 2, 3}, {0, 0}, schur, 0), validation_error);
    CHECK_THROWS_AS(count_monochromatic({0, 1, 2}, {0, 0, 0}, schur, 0), validation_error);
}

TEST_CASE("arrow boundaries for sums and progressions") {
    auto v8 = decide_arrow(instance(8, {"schur", "schur"}));
    REQUIRE(v8.status == ArrowStatus::good_colouring);
    REQUIRE(v8.witness.size() == 8);
    auto schur = profile_of("schur");
    for (int i : {0, 1})
        CHECK(count_monochromatic(ground_range(8), v8.witness, schur, i) == 0);
    CHECK(v8.nodes > 0);

    CHECK(decide_arrow(instance(9, {"schur", "schur"})).status == ArrowStatus::ramsey);
    CHECK(decide_arrow(instance(8, {"ap3", "ap3"})).status == ArrowStatus::good_colouring);
    CHECK(decide_arrow(instance(9, {"ap3", "ap3"})).status == ArrowStatus::ramsey);
}

TEST_CASE("one element is always colourable") {
    auto v = decide_arrow(instance(1, {"schur", "ap4"}));
    CHECK(v.status == ArrowStatus::good_colouring);
    CHECK(v.witness.size() == 1);
}

TEST_CASE("tiny budgets end in the explicit third verdict") {
    auto v = decide_arrow(instance(9, {"schur", "schur"}), 10);
    CHECK(v.status == ArrowStatus::budget_exhausted);
    CHECK(v.nodes > 0);
    CHECK(v.witness.empty());
}

TEST_CASE("search agrees with the all-colourings oracle") {
    for (int n = 1; n <= 7; ++n) {
        CAPTURE(n);
        auto inst = instance(n, {"schur", "schur"});
        CHECK((decide_arrow(inst).status == ArrowStatus::ramsey) == naive_arrows(inst));
        auto inst3 = instance(n, {"ap3", "ap3"});
        CHECK((decide_arrow(inst3).status == ArrowStatus::ramsey) == naive_arrows(inst3));
    }
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        auto mixed = instance(n, {"schur", "ap3"});
        CHECK((decide_arrow(mixed).status == ArrowStatus::ramsey) == naive_arrows(mixed));
    }
}

TEST_CASE("the arrow property is monotone along nested ground sets") {
    bool seen_ramsey = false;
    for (int n = 6; n <= 12; ++n) {
        CAPTURE(n);
        auto st = decide_arrow(instance(n, {"schur", "schur"})).status;
        REQUIRE(st != ArrowStatus::budget_exhausted);
        if (seen_ramsey) CHECK(st == ArrowStatus::ramsey);
        if (st == ArrowStatus::ramsey) seen_ramsey = true;
    }
    CHECK(seen_ramsey);
}

TEST_CASE("swapping the colour order does not change the verdict") {
    for (int n : {7, 9, 11}) {
        CAPTURE(n);
        auto a = decide_arrow(instance(n, {"schur", "ap3"}));
        auto b = decide_arrow(instance(n, {"ap3", "schur"}));
        CHECK(a.status == b.status);
    }
}

TEST_CASE("worker split leaves the verdict and node count unchanged") {
    for (int n : {8, 9}) {
        CAPTURE(n);
        auto inst = instance(n, {"schur", "ap3"});
        auto a = decide_arrow(inst, 1'000'000'000, 1);
        auto b = decide_arrow(inst, 1'000'000'000, 3);
        CHECK(a.status == b.status);
        CHECK(a.nodes == b.nodes);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("a matrix with no solutions absorbs the whole ground set") {
    RamseyInstance inst;
    inst.ground = ground_range(12);
    inst.matrices.push_back(profile_of("schur"));
    inst.matrices.push_back(make_profile(parse_matrix_text("1 3\n1 1 1\n")));
    auto v = decide_arrow(inst);
    REQUIRE(v.status == ArrowStatus::good_colouring);
    CHECK(v.witness == std::vector<int>(12, 1));
}

TEST_CASE("instances are validated before searching") {
    RamseyInstance inst;
    inst.ground = {2, 1};
    inst.matrices.push_back(profile_of("schur"));
    CHECK_THROWS_AS(decide_arrow(inst), validation_error);

    RamseyInstance empty;
    CHECK_THROWS_AS(decide_arrow(empty), validation_error);

    CHECK_THROWS_AS(decide_arrow(instance(5, {"schur"}), 0), validation_error);
    CHECK_THROWS_AS(decide_arrow(instance(5, {"schur"}), 100, 0), validation_error);
}

TEST_CASE("supersaturation values around the boundary") {
    auto schur = profile_of("schur");
    auto r8 = supersaturation_scan(8, 2, schur);
    CHECK(r8.exact);
    CHECK(r8.value == 0);

    long long prev = 0;
    for (int n = 9; n <= 14; ++n) {
        CAPTURE(n);
        auto res = supersaturation_scan(n, 2, schur);
        REQUIRE(res.exact);
        CHECK(res.value > 0);
        CHECK(res.value >= prev);
        prev = res.value;
    }
}

TEST_CASE("one colour means the full solution count") {
    auto schur = profile_of("schur");
    auto res = supersaturation_scan(9, 1, schur);
    CHECK(res.exact);
    CHECK(res.value == 32);
    CHECK(res.value == static_cast<long long>(enumerate_solutions(schur, 9).edge_count()));
}

TEST_CASE("supersaturation agrees with the all-colourings oracle") {
    auto schur = profile_of("schur");
    for (int n : {6, 8, 9, 10}) {
        CAPTURE(n);
        CHECK(supersaturation_scan(n, 2, schur).value == naive_supersaturation(n, 2, schur));
    }
}

TEST_CASE("supersaturation honours budgets and guards") {
    auto schur = profile_of("schur");
    CHECK_THROWS_AS(supersaturation_scan(100, 2, schur), validation_error);
    CHECK_THROWS_AS(supersaturation_scan(12, 0, schur), validation_error);
    CHECK_THROWS_AS(supersaturation_scan(12, 2, schur, 5), budget_error);

    auto rough = supersaturation_scan(12, 2, schur, 40);
    CHECK_FALSE(rough.exact);
    CHECK(rough.value >= supersaturation_scan(12, 2, schur).value);
}

TEST_CASE("partition edge fractions at small sizes") {
    auto schur = profile_of("schur");
    auto z8 = zeta_estimate(8, {schur, schur});
    CHECK(z8.exact);
    CHECK(z8.value == 0);

    auto z20 = zeta_estimate(20, {schur, schur});
    CHECK(z20.exact);
    CHECK(z20.value > 0);

    auto z6 = zeta_estimate(6, {profile_of("ap3")});
    CHECK(z6.exact);
    CHECK(z6.value == 1);
}

TEST_CASE("zeta scales the two-colour supersaturation value") {
    auto schur = profile_of("schur");
    long long edges = static_cast<long long>(enumerate_solutions(schur, 11).edge_count());
    auto z = zeta_estimate(11, {schur, schur});
    auto s = supersaturation_scan(11, 2, schur);
    REQUIRE(z.exact);
    REQUIRE(s.exact);
    CHECK(z.value == Rational(Int(s.value), Int(edges)));
}

TEST_CASE("zeta validates its input") {
    auto schur = profile_of("schur");
    CHECK_THROWS_AS(zeta_estimate(2, {schur}), validation_error);
    CHECK_THROWS_AS(zeta_estimate(100, {schur}), validation_error);
    CHECK_THROWS_AS(zeta_estimate(8, {}), validation_error);
}

TEST_CASE("colourings and verdicts serialise") {
    CHECK(format_colouring({1, 2, 4}, {0, 1, 0}) == "1 1\n2 2\n4 1\n");
    CHECK_THROWS_AS(format_colouring({1, 2}, {0}), validation_error);

    auto good = decide_arrow(instance(8, {"schur", "schur"}));
    auto doc = nlohmann::json::parse(format_verdict(good, ground_range(8)));
    CHECK(doc["verdict"] == "good-colouring");
    CHECK(doc["nodes"].get<long long>() > 0);
    CHECK(doc["witness"].get<std::string>() == format_colouring(ground_range(8), good.witness));

    auto hard = decide_arrow(instance(9, {"schur", "schur"}));
    auto doc2 = nlohmann::json::parse(format_verdict(hard, ground_range(9)));
    CHECK(doc2["verdict"] == "ramsey");
    CHECK_FALSE(doc2.contains("witness"));
}
