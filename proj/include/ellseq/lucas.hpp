// Desk-scale checks for the classical family u_n = a^n - b^n: Zsigmondy
// exception scans, Schinzel's composite-primitive-divisor examples for the
// Mersenne sequence, all through the same gcd-stripping used for beta.
#pragma once

#include <vector>

#include "ellseq/arith.hpp"

namespace ellseq {

struct LucasConfig {
    Int a, b;  // coprime, a > b >= 1
};

inline LucasConfig validate_lucas(const Int& a, const Int& b) {
    if (b < 1 || a <= b) throw UsageError("lucas requires a > b >= 1");
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw UsageError("lucas requires gcd(a, b) = 1");
    return LucasConfig{a, b};
}

inline Int lucas_term(const LucasConfig& cfg, long n) {
    if (n < 1) throw UsageError("lucas index must be >= 1");
    Int an, bn;
    mpz_pow_ui(an.get_mpz_t(), cfg.a.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(bn.get_mpz_t(), cfg.b.get_mpz_t(), static_cast<unsigned long>(n));
    return an - bn;
}

// Indices 2 <= n <= limit where u_n has no primitive divisor (n = 1 is
// excluded by convention: every prime of u_1 is primitive).
inline std::vector<long> lucas_zsigmondy_scan(const LucasConfig& cfg, long limit) {
    if (limit > 200) throw UsageError("lucas scan limit capped at 200");
    std::vector<long> exceptions;
    Int support(1);
    for (long n = 1; n <= limit; ++n) {
        Int u = lucas_term(cfg, n);
        Int prim = strip_support(u, support);
        if (n >= 2 && prim == 1) exceptions.push_back(n);
        if (prim > 1) support *= prim;
    }
    return exceptions;
}

struct SchinzelReport {
    long k = 0;
    long index = 0;  // 4k
    Int primitive_part;
    FactoredInteger factors;
    bool composite = false;  // >= 2 prime factors with multiplicity
};

// Mersenne case (a, b) = (2, 1): the primitive part of u_{4k} for odd k > 5
// should be composite. k defaults to staying within easy factoring range.
inline SchinzelReport schinzel_mersenne_check(long k, long k_cap = 15,
                                              FactorBudget budget = {}) {
    if (k % 2 == 0 || k <= 5) throw UsageError("schinzel check requires odd k > 5");
    if (k > k_cap) throw UsageError("schinzel check capped at k = " + std::to_string(k_cap));
    LucasConfig cfg = validate_lucas(Int(2), Int(1));
    Int support(1);
    for (long n = 1; n < 4 * k; ++n) {
        Int prim = strip_support(lucas_term(cfg, n), support);
        if (prim > 1) support *= prim;
    }
    SchinzelReport rep;
    rep.k = k;
    rep.index = 4 * k;
    rep.primitive_part = strip_support(lucas_term(cfg, 4 * k), support);
    rep.factors = factor(rep.primitive_part, budget);
    unsigned long multiplicity = rep.factors.cofactor ? 2 : 0;  // composite cofactor
    for (const auto& [p, e] : rep.factors.primes) multiplicity += e;
    rep.composite = multiplicity >= 2;
    return rep;
}

// Divisibility and BHV-style helpers share lucas_zsigmondy_scan; the
// remaining classical statements are exercised in the test suite.

}  // namespace ellseq
