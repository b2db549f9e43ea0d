#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellseq/somos.hpp"

using namespace ellseq;

namespace {

std::array<Rat, 4> ones() { return {Rat(1), Rat(1), Rat(1), Rat(1)}; }

SequenceConfig cfg_example() {
    return SequenceConfig{validate_curve(0, 0, 1, -1, 0), Point(Rat(1), Rat(0)),
                          Point(Rat(0), Rat(0)), "ex"};
}

SequenceConfig cfg37() {
    return SequenceConfig{validate_curve(0, 0, 1, -1, 0), Point(Rat(0), Rat(0)),
                          Point::infinity(), "37a"};
}

}  // namespace

TEST_CASE("somos-4 from the recurrence") {
    SomosSequence s4 = somos_from_recurrence(Rat(1), Rat(1), ones(), 12, 0);
    static const long expect[12] = {1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209};
    for (long i = 0; i < 12; ++i) CHECK(s4.at(i) == Rat(expect[i]));
    CHECK(s4.window_identity_holds());
    CHECK(s4.provenance == "recurrence");
}

TEST_CASE("somos-4 stays integral far out") {
    SomosSequence s4 = somos_from_recurrence(Rat(1), Rat(1), ones(), 201, 0);
    for (long i = 0; i <= 200; ++i) CHECK(s4.at(i).get_den() == 1);
}

TEST_CASE("degenerate and zero-term inputs") {
    CHECK_THROWS_AS(somos_from_recurrence(Rat(0), Rat(0), ones(), 10), DegenerateParamsError);
    // A = 1, B = -1 with four ones forces the next term to zero; generation
    // aborts (a zero would later divide the recurrence).
    CHECK_THROWS_AS(somos_from_recurrence(Rat(1), Rat(-1), ones(), 10), ZeroTermError);
    CHECK_THROWS_AS(
        somos_from_recurrence(Rat(1), Rat(1), {Rat(1), Rat(0), Rat(1), Rat(1)}, 10),
        ZeroTermError);
}

TEST_CASE("signed divisibility-style sequence satisfies the window identity") {
    SomosSequence eds = somos_from_recurrence(Rat(1), Rat(-1),
                                              {Rat(1), Rat(1), Rat(1), Rat(-1)}, 40, 1);
    CHECK(eds.window_identity_holds());
    CHECK(eds.at(5) == Rat(-2));
    CHECK(eds.at(6) == Rat(-3));
}

TEST_CASE("somos from curve: the worked example") {
    SomosSequence seq = somos_from_curve(cfg_example(), Rat(1), Rat(1), 10);
    CHECK(seq.first_index() == -1);
    static const long expect[] = {1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313};
    for (long i = -1; i <= 10; ++i) CHECK(seq.at(i) == Rat(expect[i + 1]));
    // s_4 = -(x_3 - 1) s_3^2 / s_2 = 7
    CHECK(seq.at(4) == Rat(7));
    CHECK(seq.provenance == "curve(ex)");

    CHECK_THROWS_AS(somos_from_curve(cfg_example(), Rat(1), Rat(0), 5), ZeroStartError);
    CHECK_THROWS_AS(somos_from_curve(cfg37(), Rat(1), Rat(1), 5), HitInfinityError);
}

TEST_CASE("parameter inference") {
    SomosSequence s4 = somos_from_recurrence(Rat(1), Rat(1), ones(), 8, 0);
    ABInference inf = infer_somos_parameters(s4.terms);
    REQUIRE(inf.kind == ABInference::Kind::Unique);
    CHECK(inf.A == 1);
    CHECK(inf.B == 1);

    SomosSequence curve_seq = somos_from_curve(cfg_example(), Rat(1), Rat(1), 10);
    ABInference curve_inf = infer_somos_parameters(curve_seq.terms);
    REQUIRE(curve_inf.kind == ABInference::Kind::Unique);
    CHECK(curve_inf.A == 1);
    CHECK(curve_inf.B == 1);

    std::vector<Rat> constant(7, Rat(1));
    ABInference flat = infer_somos_parameters(constant);
    CHECK(flat.kind == ABInference::Kind::Underdetermined);
    REQUIRE(flat.line.has_value());
    CHECK((*flat.line)[0] == 1);  // A + B = 1
    CHECK((*flat.line)[1] == 1);
    CHECK((*flat.line)[2] == 1);

    CHECK_THROWS_AS(infer_somos_parameters(std::vector<Rat>(5, Rat(1))), UsageError);
}

TEST_CASE("inference round trip on random parameters") {
    std::mt19937_64 gen(31337);
    std::uniform_int_distribution<int> small(-4, 4);
    int done = 0;
    while (done < 25) {
        Rat A(small(gen)), B(small(gen));
        if (A == 0 && B == 0) continue;
        std::array<Rat, 4> init;
        bool zero = false;
        for (auto& t : init) {
            int num = small(gen), den = std::abs(small(gen));
            if (num == 0 || den == 0) {
                zero = true;
                break;
            }
            t = make_rat(Int(num), Int(den));
        }
        if (zero) continue;
        SomosSequence seq;
        try {
            seq = somos_from_recurrence(A, B, init, 12, 0);
        } catch (const ZeroTermError&) {
            continue;
        }
        ABInference inf = infer_somos_parameters(seq.terms);
        if (inf.kind == ABInference::Kind::Unique) {
            CHECK(inf.A == A);
            CHECK(inf.B == B);
        } else {
            // degenerate data: the reported line must carry the true (A, B)
            REQUIRE(inf.kind == ABInference::Kind::Underdetermined);
            if (inf.line)
                CHECK((*inf.line)[0] * A + (*inf.line)[1] * B == (*inf.line)[2]);
        }
        ++done;
    }
}

TEST_CASE("somos-4 correspondence") {
    CorrespondenceReport rep = somos4_correspondence_check(30, 12);
    CHECK(rep.terms_match);
    CHECK(rep.shift == 2);
    CHECK(rep.squares_match);
    CHECK(rep.passed());
}

TEST_CASE("omega of the somos-4 term product") {
    SomosSequence s4 = somos_from_recurrence(Rat(1), Rat(1), ones(), 16, 0);
    OmegaBound b = somos_omega_product(s4, 12);
    REQUIRE(b.upper.has_value());
    CHECK(b.lower == 9);  // {2,3,7,23,59,157,11,139,8209}
    CHECK(b.lower >= 8);

    OmegaBound none = somos_omega_product(s4, 4);
    CHECK(none.lower == 0);

    // a rational term is rejected: 1,1,1,3 goes fractional at index 7
    SomosSequence frac = somos_from_recurrence(Rat(1), Rat(1),
                                               {Rat(1), Rat(1), Rat(1), Rat(3)}, 9, 0);
    REQUIRE(frac.at(7).get_den() != 1);
    CHECK_THROWS_AS(somos_omega_product(frac, 8), NonIntegralError);
}

TEST_CASE("primitive transfer: example configuration") {
    Sequence seq(cfg_example());
    TransferReport rep = primitive_transfer_check(seq, 12);
    CHECK(rep.mismatches == 0);
    for (const auto& row : rep.rows) {
        CHECK(row.covered);
        CHECK(row.transferred);
    }
    // beta_3 of the example gains prime 3 (x(7Q)); it divides s_3 = 3
    CHECK(rep.rows[2].primitive_primes == std::vector<Int>{Int(3)});
}

TEST_CASE("primitive transfer: Q = O routes through odd multiples") {
    Sequence seq(cfg37());
    TransferReport rep = primitive_transfer_check(seq, 15);
    CHECK(rep.mismatches == 0);
    const TransferRow& r15 = rep.rows[14];
    CHECK(r15.n == 15);
    CHECK(r15.covered);
    CHECK(r15.primitive_primes == std::vector<Int>{Int(157)});
    CHECK(r15.entry_index == 7);  // s'_7 = 314 = 2 * 157
    CHECK(r15.transferred);
    for (const auto& row : rep.rows)
        if (row.n % 2 == 0) CHECK_FALSE(row.covered);
}
