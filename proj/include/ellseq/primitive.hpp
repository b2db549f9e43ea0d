// Primitive-divisor detection and omega-window statistics.
//
// The primitive part of beta_n is beta_n with every prime that divides some
// earlier beta_m (m < n) removed. Detection works by gcd-stripping against an
// accumulated product of earlier primitive parts: that product has the same
// prime support as the radical of beta_1 .. beta_{n-1}, since every prime
// appears first in the primitive part of its rank of apparition. No
// factorization is needed until the primes themselves are wanted.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ellseq/sequence.hpp"

namespace ellseq {

struct PrimitiveReport {
    long n = 0;
    Int primitive_part;               // divides beta_n; coprime to all earlier terms
    FactoredInteger primitive_primes; // of the primitive part (budgeted)
    bool has_primitive = false;
    // every resolved prime double-checked coprime to the pre-n accumulation
    bool primes_verified = false;
};

// Sequential scanner; reports are memoized. Factoring happens only when a
// report is requested, so frontier scans stay gcd-only.
class PrimitiveScanner {
public:
    explicit PrimitiveScanner(Sequence& seq, FactorBudget budget = {})
        : seq_(seq), budget_(budget) {}

    // Light pass: primitive part and flag only.
    void advance_to(long n) {
        while (static_cast<long>(parts_.size()) < n) {
            long next = static_cast<long>(parts_.size()) + 1;
            const Int& beta = seq_.term(next).beta;
            Int prim = strip_support(beta, support_);
            parts_.emplace_back(prim, support_);
            if (prim > 1) support_ *= prim;
        }
    }

    bool has_primitive(long n) {
        advance_to(n);
        return parts_[static_cast<size_t>(n - 1)].first > 1;
    }

    const Int& primitive_part_of(long n) {
        advance_to(n);
        return parts_[static_cast<size_t>(n - 1)].first;
    }

    // Full report: factors the primitive part (budgeted) and verifies each
    // resolved prime against the accumulated support before index n.
    const PrimitiveReport& report(long n) {
        advance_to(n);
        auto it = reports_.find(n);
        if (it != reports_.end()) return it->second;
        const auto& [prim, support_before] = parts_[static_cast<size_t>(n - 1)];
        PrimitiveReport rep;
        rep.n = n;
        rep.primitive_part = prim;
        rep.has_primitive = prim > 1;
        if (prim > 1) rep.primitive_primes = factor(prim, budget_);
        rep.primes_verified = true;
        for (const auto& [p, e] : rep.primitive_primes.primes) {
            Int g;
            mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), support_before.get_mpz_t());
            if (g != 1 || !mpz_divisible_p(prim.get_mpz_t(), p.get_mpz_t()))
                rep.primes_verified = false;
        }
        return reports_.emplace(n, std::move(rep)).first->second;
    }

    Sequence& sequence() { return seq_; }

private:
    Sequence& seq_;
    FactorBudget budget_;
    Int support_{1};
    std::vector<std::pair<Int, Int>> parts_;  // (primitive part, support before n)
    std::map<long, PrimitiveReport> reports_;
};

inline PrimitiveReport primitive_part(Sequence& seq, long n, FactorBudget budget = {}) {
    PrimitiveScanner scanner(seq, budget);
    return scanner.report(n);
}

// Indices n <= limit whose beta_n has no primitive divisor.
inline std::vector<long> zsigmondy_frontier(Sequence& seq, long limit) {
    PrimitiveScanner scanner(seq);
    std::vector<long> exceptions;
    for (long n = 1; n <= limit; ++n)
        if (!scanner.has_primitive(n)) exceptions.push_back(n);
    return exceptions;
}

struct PerPrimeStats {
    unsigned long total = 0;  // valuation of the whole window product
    unsigned long max = 0;    // largest per-term valuation
};

struct WindowStats {
    long M = 0, N = 0;
    long omega_lower = 0;
    std::optional<long> omega_upper;   // absent while cofactors are unresolved
    std::map<Int, PerPrimeStats> per_prime;
    std::vector<long> exceptions;      // in-window indices without a primitive divisor
    long unresolved_cofactors = 0;
};

// Distinct primes across prod(beta_n, M < n <= M+N), counted from per-term
// factorizations without forming the product. Valuations for every
// discovered prime are recomputed exactly even when some factorization has
// an unresolved cofactor.
inline WindowStats omega_window(Sequence& seq, long M, long N, FactorBudget budget = {}) {
    WindowStats stats;
    stats.M = M;
    stats.N = N;
    auto window = seq.range(M, N);
    OmegaAccumulator acc;
    for (const auto& rec : window) {
        if (!rec.factors) seq.mutable_record(rec.n).factors = factor(rec.beta, budget);
        const FactoredInteger& f = *seq.term(rec.n).factors;
        acc.add(f);
        if (f.cofactor) ++stats.unresolved_cofactors;
    }
    OmegaBound bound = acc.result();
    stats.omega_lower = bound.lower;
    stats.omega_upper = bound.upper;
    for (const Int& p : acc.primes()) {
        PerPrimeStats ps;
        for (const auto& rec : seq.range(M, N)) {
            if (rec.beta == 1 || !mpz_divisible_p(rec.beta.get_mpz_t(), p.get_mpz_t()))
                continue;
            unsigned long v = p_adic_valuation(rec.beta, p);
            ps.total += v;
            ps.max = std::max(ps.max, v);
        }
        stats.per_prime.emplace(p, ps);
    }
    PrimitiveScanner scanner(seq);
    for (long n = M + 1; n <= M + N; ++n)
        if (!scanner.has_primitive(n)) stats.exceptions.push_back(n);
    return stats;
}

struct MultiPrimitiveRow {
    long n = 0;          // outer index, coprime to q
    long index = 0;      // q * n
    Int primitive_part;
    std::vector<Int> primes;          // resolved primitive primes at q*n
    bool has_unresolved_cofactor = false;
    long count_lower = 0;             // resolved primes + 1 per cofactor
    bool meets_target = false;        // count_lower >= r
    bool primes_verified = false;
};

struct MultiPrimitiveReport {
    std::vector<Int> primes;  // p_1 < ... < p_r
    Int q;                    // product
    long target = 0;          // r
    std::vector<MultiPrimitiveRow> rows;
};

// Per-n primitive-prime counts of beta_{qn} with q = p_1...p_r, for n in
// (M, M+N] coprime to q. Requires Q = O and r < p_1; primitivity is relative
// to every earlier index m < qn.
inline MultiPrimitiveReport multi_primitive_experiment(Sequence& seq,
                                                       const std::vector<Int>& primes,
                                                       long M, long N,
                                                       FactorBudget budget = {}) {
    if (!seq.config().Q.is_infinity())
        throw UsageError("multi_primitive_experiment requires Q = O");
    if (primes.empty()) throw InvalidPrimeListError("prime list is empty");
    for (size_t i = 0; i < primes.size(); ++i) {
        if (!is_probable_prime(primes[i]))
            throw InvalidPrimeListError("not prime: " + primes[i].get_str());
        if (i > 0 && primes[i] <= primes[i - 1])
            throw InvalidPrimeListError("primes must be strictly increasing");
    }
    long r = static_cast<long>(primes.size());
    if (primes[0] <= r)
        throw InvalidPrimeListError("need r < p_1 (r = " + std::to_string(r) + ")");

    MultiPrimitiveReport report;
    report.primes = primes;
    report.q = 1;
    for (const Int& p : primes) report.q *= p;
    report.target = r;

    PrimitiveScanner scanner(seq, budget);
    for (long n = M + 1; n <= M + N; ++n) {
        Int g;
        Int nz(n);
        mpz_gcd(g.get_mpz_t(), nz.get_mpz_t(), report.q.get_mpz_t());
        if (g != 1) continue;
        Int idx_z = report.q * n;
        long idx = static_cast<long>(idx_z.get_si());
        const PrimitiveReport& rep = scanner.report(idx);
        MultiPrimitiveRow row;
        row.n = n;
        row.index = idx;
        row.primitive_part = rep.primitive_part;
        for (const auto& [p, e] : rep.primitive_primes.primes) row.primes.push_back(p);
        row.has_unresolved_cofactor = rep.primitive_primes.cofactor.has_value();
        row.count_lower = static_cast<long>(row.primes.size()) +
                          (row.has_unresolved_cofactor ? 1 : 0);
        row.meets_target = row.count_lower >= r;
        row.primes_verified = rep.primes_verified;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace ellseq
