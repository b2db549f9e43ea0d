#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ellseq/congruence.hpp"

using namespace ellseq;
using Catch::Approx;

namespace {

SequenceConfig cfg37() {
    return SequenceConfig{validate_curve(0, 0, 1, -1, 0), Point(Rat(0), Rat(0)),
                          Point::infinity(), "37a"};
}

SequenceConfig cfg_example() {
    return SequenceConfig{validate_curve(0, 0, 1, -1, 0), Point(Rat(1), Rat(0)),
                          Point(Rat(0), Rat(0)), "ex"};
}

}  // namespace

TEST_CASE("ranks of apparition on the reference sequence") {
    Sequence seq(cfg37());
    CHECK(rank_of_apparition(seq, Int(2)) == 5);
    CHECK(rank_of_apparition(seq, Int(3)) == 7);
    CHECK(rank_of_apparition(seq, Int(5)) == 8);
    CHECK(rank_of_apparition(seq, Int(7)) == 9);
    CHECK(rank_of_apparition(seq, Int(23)) == 11);
    CHECK(rank_of_apparition(seq, Int(29)) == 12);
    CHECK(rank_of_apparition(seq, Int(157)) == 15);
    CHECK_THROWS_AS(rank_of_apparition(seq, Int(37)), BadReductionError);
}

TEST_CASE("rank of a mid-size prime via the reduced-curve walk") {
    Sequence seq(cfg37());
    // beta_19 = 8209^2 and no earlier term is divisible by 8209
    CHECK(rank_of_apparition(seq, Int(8209)) == 19);
    // beyond the reduction cap the divisibility scan takes over
    CHECK(rank_of_apparition(seq, Int(620297)) == 23);
}

TEST_CASE("rank via reduction agrees with the divisibility fallback") {
    Sequence seq(cfg37());
    for (long p : {2, 3, 5, 7, 23, 29, 157}) {
        auto fast = rank_of_apparition(seq, Int(p));
        auto slow = rank_of_apparition(seq, Int(p), /*reduction_cap=*/1, /*scan_cap=*/60);
        CHECK(fast == slow);
    }
}

TEST_CASE("rank for Q != O can be empty") {
    Sequence ex(cfg_example());
    // 5 never divides the example denominators (odd multiples never reduce to O mod 5)
    CHECK_FALSE(rank_of_apparition(ex, Int(5)).has_value());
    CHECK(rank_of_apparition(ex, Int(2)) == 2);
}

TEST_CASE("count_solutions: documented counts") {
    Sequence seq(cfg37());

    CongruenceCount c2 = count_solutions(seq, 0, 100, Int(2));
    CHECK(c2.count == 20);
    for (long idx : c2.indices) CHECK(idx % 5 == 0);
    CHECK(c2.progression_rank == 5);
    CHECK(c2.progression_consistent);

    CongruenceCount c8 = count_solutions(seq, 0, 100, Int(8));
    CHECK(c8.count == 10);
    for (long idx : c8.indices) CHECK(idx % 10 == 0);
    CHECK(c8.progression_consistent);

    // window shorter than the rank has no solutions
    CongruenceCount none = count_solutions(seq, 0, 10, Int(23));
    CHECK(none.count == 0);

    CHECK_THROWS_AS(count_solutions(seq, 0, 10, Int(6)), UsageError);
}

TEST_CASE("progression structure across the modulus grid") {
    Sequence seq(cfg37());
    static const std::pair<long, long> expected[] = {
        {2, 20}, {4, 20}, {8, 10}, {3, 14}, {9, 14}, {5, 12}, {7, 11}, {23, 9}};
    for (auto [m, count] : expected) {
        CongruenceCount cc = count_solutions(seq, 0, 100, Int(m));
        CHECK(cc.count == count);
        CHECK(cc.progression_consistent);
        REQUIRE(cc.progression_rank.has_value());
        for (long idx : cc.indices) CHECK(idx % *cc.progression_rank == 0);
    }
}

TEST_CASE("gap bound: beta_gap >= m between consecutive solutions") {
    Sequence seq(cfg37());
    for (long m : {2, 4, 8, 3, 9, 5, 7, 23}) {
        CongruenceCount cc = count_solutions(seq, 0, 100, Int(m));
        for (size_t i = 1; i < cc.indices.size(); ++i) {
            long gap = cc.indices[i] - cc.indices[i - 1];
            CHECK(seq.term(gap).beta >= m);
        }
    }
}

TEST_CASE("coset structure for Q != O") {
    Sequence ex(cfg_example());
    Sequence base(cfg37());
    for (long p : {2, 3, 7, 23, 29}) {
        auto rank = rank_of_apparition(base, Int(p));
        REQUIRE(rank.has_value());
        CongruenceCount cc = count_solutions(ex, 0, 100, Int(p));
        std::set<long> classes;
        for (long idx : cc.indices) classes.insert(idx % *rank);
        CHECK(classes.size() <= 1);
    }
    // verified nonempty for p = 2: solutions n = 2 mod 5
    CongruenceCount c2 = count_solutions(ex, 0, 100, Int(2));
    CHECK(c2.count == 20);
    for (long idx : c2.indices) CHECK(idx % 5 == 2);
}

TEST_CASE("valuation profile at small primes") {
    Sequence seq(cfg37());

    ValuationProfile p2 = valuation_profile(seq, Int(2), 4);
    CHECK(p2.rank == 5);
    CHECK(p2.base_valuation == 2);
    CHECK(p2.rows[0].valuation == 2);   // k=1, n=5
    CHECK(p2.rows[1].valuation == 4);   // k=2, n=10
    CHECK(p2.rows[3].valuation == 6);   // k=4, n=20
    CHECK(p2.law_holds);

    ValuationProfile p3 = valuation_profile(seq, Int(3), 3);
    CHECK(p3.rank == 7);
    CHECK(p3.rows[2].valuation == 4);  // nu_3(beta_21) = 2 + 2*nu_3(3)
    CHECK(p3.law_holds);

    // k coprime to p leaves the valuation at the base value
    for (const auto& row : valuation_profile(seq, Int(5), 4).rows)
        if (row.k % 5 != 0) CHECK(row.valuation == p_adic_valuation(seq.term(8).beta, Int(5)));

    Sequence ex(cfg_example());
    CHECK_THROWS_AS(valuation_profile(ex, Int(2), 3), UsageError);
}

TEST_CASE("bound ratio table") {
    Sequence seq(cfg37());
    std::vector<Int> grid{Int(2), Int(4), Int(8), Int(3), Int(9), Int(5), Int(7), Int(23)};
    RatioTable table = bound_ratio_check(seq, {{0, 100}}, grid);
    REQUIRE(table.cells.size() == 8);
    CHECK(table.cells[0].count == 20);
    CHECK(table.cells[0].ratio == Approx(19.0 * std::sqrt(std::log(2.0)) / 100.0).epsilon(1e-9));
    CHECK(table.max_ratio < 1.0);
    CHECK(table.max_ratio == Approx(0.2237).margin(5e-4));

    // modulus beyond every beta in the window: T = 0, ratio <= 0
    Int big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 200);
    RatioTable empty = bound_ratio_check(seq, {{0, 50}}, {big});
    CHECK(empty.cells[0].count == 0);
    CHECK(empty.cells[0].ratio <= 0.0);

    std::string csv = to_csv(table);
    CHECK(csv.rfind("M,N,m,count,ratio\n", 0) == 0);
    CHECK(csv.find("0,100,2,20,") != std::string::npos);
}
