#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ellseq/arith.hpp"

using namespace ellseq;

TEST_CASE("probable prime: deterministic range") {
    CHECK(is_probable_prime(Int(2)));
    CHECK(is_probable_prime(Int(37)));
    CHECK(is_probable_prime(Int(8209)));
    CHECK_FALSE(is_probable_prime(Int(1)));
    CHECK_FALSE(is_probable_prime(Int(98596)));
    CHECK_FALSE(is_probable_prime(Int(8209 * 2)));
    // strong pseudoprime traps
    CHECK_FALSE(is_probable_prime(Int("3215031751")));
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727")));  // 2^127-1
}

TEST_CASE("probable prime: above the deterministic threshold") {
    Int m89("618970019642690137449562111");  // 2^89-1, prime
    CHECK(m89 > Int("3317044064679887385961981"));
    CHECK(is_probable_prime(m89));
    Int m61("2305843009213693951");  // 2^61-1, prime
    CHECK_FALSE(is_probable_prime(m61 * m61));
    CHECK_FALSE(is_probable_prime(m89 * 3));
}

TEST_CASE("factor: small examples") {
    FactoredInteger f = factor(Int(314));
    CHECK(f.sign == 1);
    CHECK(f.primes == std::map<Int, unsigned long>{{Int(2), 1}, {Int(157), 1}});
    CHECK(f.complete());

    FactoredInteger g = factor(Int(-16264));
    CHECK(g.sign == -1);
    CHECK(g.primes == std::map<Int, unsigned long>{{Int(2), 3}, {Int(19), 1}, {Int(107), 1}});
    CHECK(g.value() == -16264);

    FactoredInteger one = factor(Int(1));
    CHECK(one.primes.empty());
    CHECK(one.complete());
    CHECK(one.value() == 1);

    CHECK(factor(Int(98596)).primes ==
          std::map<Int, unsigned long>{{Int(2), 2}, {Int(157), 2}});
    CHECK_THROWS_AS(factor(Int(0)), UsageError);
}

TEST_CASE("factor: perfect powers and medium primes") {
    Int p("1000000007");
    FactoredInteger f = factor(p * p);
    REQUIRE(f.complete());
    CHECK(f.primes == std::map<Int, unsigned long>{{p, 2}});

    FactoredInteger g = factor(p * p * p * Int(12));
    CHECK(g.value() == p * p * p * 12);
    CHECK(g.primes.at(p) == 3);
    CHECK(g.primes.at(Int(2)) == 2);
    CHECK(g.primes.at(Int(3)) == 1);
}

TEST_CASE("factor: budget exhaustion leaves a flagged cofactor") {
    Int p("1000000007"), q("1000000009");
    FactorBudget none;
    none.rho_iterations = 0;
    FactoredInteger f = factor(p * q * 6, none);
    CHECK(f.primes == std::map<Int, unsigned long>{{Int(2), 1}, {Int(3), 1}});
    REQUIRE(f.cofactor.has_value());
    CHECK(*f.cofactor == p * q);
    CHECK(f.value() == p * q * 6);
    // the same input resolves with the default budget
    CHECK(factor(p * q * 6).complete());
}

TEST_CASE("factor: reconstruction property on random inputs") {
    std::mt19937_64 gen(424242);
    std::uniform_int_distribution<long long> dist(2, 1'000'000'000'000'000'000LL);
    for (int i = 0; i < 150; ++i) {
        long long v = dist(gen);
        Int n(std::to_string(v));
        if (i % 2 == 0) n = -n;
        FactoredInteger f = factor(n);
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.primes) CHECK(is_probable_prime(p));
    }
}

TEST_CASE("omega") {
    CHECK(omega(factor(Int(63))).lower == 2);
    CHECK(omega(factor(Int(63))).upper == 2);
    CHECK(omega(factor(Int(1))).lower == 0);
    CHECK(omega(factor(Int(1))).upper == 0);
    FactoredInteger partial;
    partial.primes[Int(3)] = 1;
    partial.cofactor = Int(1000003) * Int(1000033);
    OmegaBound b = omega(partial);
    CHECK(b.lower == 2);
    CHECK_FALSE(b.upper.has_value());
}

TEST_CASE("omega multiplicativity on coprime resolved pairs") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<long> dist(2, 1'000'000);
    for (int i = 0; i < 60; ++i) {
        Int a(dist(gen)), b(dist(gen));
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 1) continue;
        long wa = omega(factor(a)).lower;
        long wb = omega(factor(b)).lower;
        CHECK(omega(factor(a * b)).lower == wa + wb);
    }
}

TEST_CASE("p-adic valuation") {
    CHECK(p_adic_valuation(Int(16264), Int(2)) == 3);
    CHECK(p_adic_valuation(Int(37), Int(2)) == 0);
    CHECK(p_adic_valuation(Int(98596), Int(157)) == 2);
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> ed(0, 10);
    std::uniform_int_distribution<long> md(1, 1'000'000);
    for (int i = 0; i < 50; ++i) {
        int e = ed(gen);
        Int m(md(gen));
        if (mpz_divisible_ui_p(m.get_mpz_t(), 13)) continue;
        Int pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), 13, static_cast<unsigned long>(e));
        CHECK(p_adic_valuation(pe * m, Int(13)) == static_cast<unsigned long>(e));
    }
}

TEST_CASE("factor serialization round trip") {
    for (long v : {314L, -16264L, 1L, -1L, 98596L, 1024L}) {
        FactoredInteger f = factor(Int(v));
        CHECK(parse_factors(format_factors(f)).value() == v);
    }
    FactoredInteger partial;
    partial.primes[Int(3)] = 2;
    partial.cofactor = Int(1000003) * Int(1000033);
    std::string s = format_factors(partial);
    CHECK(s == "3^2|1000036000099");
    FactoredInteger back = parse_factors(s);
    CHECK(back.primes == partial.primes);
    CHECK(back.cofactor == partial.cofactor);
    CHECK(format_factors(factor(Int(1))) == "1");
    CHECK(format_factors(factor(Int(-16264))) == "-2^3,19^1,107^1");
}

TEST_CASE("strip_support removes exactly the shared primes") {
    CHECK(strip_support(Int(2 * 2 * 2 * 3 * 49), Int(6)) == 49);
    CHECK(strip_support(Int(49), Int(6)) == 49);
    CHECK(strip_support(Int(1), Int(6)) == 1);
    CHECK(strip_support(Int(1024), Int(2)) == 1);
}

TEST_CASE("coprime refinement") {
    Int p(1000003), q(1000033), r(1000037);
    std::vector<Int> basis = coprime_refine({p * q, p * r});
    REQUIRE(basis.size() == 3);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Int g;
            mpz_gcd(g.get_mpz_t(), basis[i].get_mpz_t(), basis[j].get_mpz_t());
            CHECK(g == 1);
        }
    Int prod = basis[0] * basis[1] * basis[2];
    CHECK(strip_support(p * q * p * r, prod) == 1);
}

TEST_CASE("omega accumulator counts cofactors soundly") {
    Int p(1000003), q(1000033), r(1000037);
    OmegaAccumulator acc;
    acc.add(factor(Int(6)));  // {2, 3}
    FactoredInteger c1, c2;
    c1.cofactor = p * q;
    c2.cofactor = p * r;
    acc.add(c1);
    acc.add(c2);
    OmegaBound b = acc.result();
    CHECK(b.lower == 5);  // 2, 3 + basis {p, q, r}
    CHECK_FALSE(b.upper.has_value());

    // a cofactor fully covered by resolved primes adds nothing
    OmegaAccumulator acc2;
    FactoredInteger known = factor(p * q);
    acc2.add(known);
    FactoredInteger cov;
    cov.cofactor = p * q;
    acc2.add(cov);
    OmegaBound b2 = acc2.result();
    CHECK(b2.lower == 2);
    CHECK(b2.upper == 2);
}
