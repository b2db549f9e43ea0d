#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellseq/curve.hpp"

using namespace ellseq;

namespace {
Curve curve37() { return validate_curve(0, 0, 1, -1, 0); }
Point p00() { return Point(Rat(0), Rat(0)); }
}  // namespace

TEST_CASE("discriminant and validation") {
    CHECK(curve37().disc == 37);
    CHECK(validate_curve(0, 0, 0, 0, 1).disc == -432);
    CHECK_THROWS_AS(validate_curve(0, 0, 0, 0, 0), SingularCurveError);
}

TEST_CASE("addition: worked values") {
    Curve c = curve37();
    CHECK(add(c, p00(), p00()) == Point(Rat(1), Rat(0)));
    CHECK(add(c, p00(), Point(Rat(1), Rat(0))) == Point(Rat(-1), Rat(-1)));
    CHECK(add(c, Point::infinity(), p00()) == p00());
    CHECK(add(c, p00(), Point::infinity()) == p00());
    CHECK(add(c, p00(), negate_point(c, p00())).is_infinity());
}

TEST_CASE("addition rejects off-curve points") {
    Curve c = curve37();
    CHECK_THROWS_AS(add(c, Point(Rat(1), Rat(1)), p00()), PointNotOnCurveError);
    CHECK_THROWS_AS(scalar_mul(c, Int(3), Point(Rat(5), Rat(5))), PointNotOnCurveError);
}

TEST_CASE("scalar multiples: worked values and repeated-add oracle") {
    Curve c = curve37();
    CHECK(scalar_mul(c, Int(5), p00()) == Point(make_rat(1, 4), make_rat(-5, 8)));
    CHECK(scalar_mul(c, Int(7), p00()) == Point(make_rat(-5, 9), make_rat(8, 27)));
    CHECK(scalar_mul(c, Int(1), p00()) == p00());
    CHECK(scalar_mul(c, Int(0), p00()).is_infinity());

    Point acc = Point::infinity();
    for (long k = 1; k <= 20; ++k) {
        acc = add(c, acc, p00());
        CHECK(scalar_mul(c, Int(k), p00()) == acc);
    }
    CHECK_THROWS_AS(scalar_mul(c, Int(-2), p00()), UsageError);
}

TEST_CASE("torsion detection") {
    Curve c432 = validate_curve(0, 0, 0, 0, 1);
    auto order = torsion_order(c432, Point(Rat(2), Rat(3)));
    REQUIRE(order.has_value());
    CHECK(*order == 6);
    CHECK_FALSE(torsion_order(curve37(), p00()).has_value());
    // 2-torsion: vertical tangent on y^2 = x^3 - x
    Curve c = validate_curve(0, 0, 0, -1, 0);
    auto two = torsion_order(c, Point(Rat(0), Rat(0)));
    REQUIRE(two.has_value());
    CHECK(*two == 2);
}

TEST_CASE("group-law properties on sampled multiples") {
    Curve c = curve37();
    std::vector<Point> mult{Point::infinity()};
    for (int i = 1; i <= 14; ++i) mult.push_back(add(c, mult.back(), p00()));

    for (size_t i = 1; i < mult.size(); ++i) {
        CHECK(on_curve(c, mult[i]));
        CHECK(add(c, mult[i], Point::infinity()) == mult[i]);
        CHECK(add(c, mult[i], negate_point(c, mult[i])).is_infinity());
    }
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<size_t> pick(1, 12);
    for (int t = 0; t < 120; ++t) {
        const Point &a = mult[pick(gen)], &b = mult[pick(gen)], &d = mult[pick(gen)];
        CHECK(add(c, add(c, a, b), d) == add(c, a, add(c, b, d)));
        CHECK(add(c, a, b) == add(c, b, a));
    }
}

TEST_CASE("scalar_mul distributes over addition") {
    Curve c = curve37();
    for (long m = 0; m <= 20; m += 3) {
        for (long n = 1; n <= 20; n += 4) {
            Point lhs = scalar_mul(c, Int(m + n), p00());
            Point rhs = add(c, scalar_mul(c, Int(m), p00()), scalar_mul(c, Int(n), p00()));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("reduction modulo a good prime") {
    Curve c = curve37();
    Point p5 = scalar_mul(c, Int(5), p00());  // (1/4, -5/8)
    CHECK(reduce_mod_p(c, p5, Int(2)).infinity);
    ResiduePoint r = reduce_mod_p(c, p00(), Int(5));
    CHECK_FALSE(r.infinity);
    CHECK(r.x == 0);
    CHECK(r.y == 0);
    CHECK_THROWS_AS(reduce_mod_p(c, p00(), Int(37)), BadReductionError);
}

TEST_CASE("reduction is a homomorphism") {
    Curve c = curve37();
    std::vector<Point> mult{Point::infinity()};
    for (int i = 1; i <= 12; ++i) mult.push_back(add(c, mult.back(), p00()));
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<size_t> pick(0, 12);
    for (long ell : {2, 3, 5, 7, 11, 13, 41}) {
        ReducedCurve rc(c, Int(ell));
        for (int t = 0; t < 30; ++t) {
            const Point &a = mult[pick(gen)], &b = mult[pick(gen)];
            CHECK(rc.reduce(add(c, a, b)) == rc.add(rc.reduce(a), rc.reduce(b)));
        }
    }
}

TEST_CASE("text round trips") {
    Curve c = parse_curve("0,0,1,-1,0");
    CHECK(c.disc == 37);
    CHECK(to_string(c) == "0,0,1,-1,0");
    Point p = parse_point("1/4,-5/8");
    CHECK(p == Point(make_rat(1, 4), make_rat(-5, 8)));
    CHECK(to_string(p) == "1/4,-5/8");
    CHECK(parse_point("O").is_infinity());
    CHECK(to_string(Point::infinity()) == "O");
    CHECK(parse_point("3/1,0") == Point(Rat(3), Rat(0)));  // "/1" optional on output
    CHECK_THROWS_AS(parse_curve("1,2,3"), UsageError);
    CHECK_THROWS_AS(parse_point("zzz"), UsageError);
    CHECK_THROWS_AS(parse_point("1,2,3"), UsageError);
}
