// Congruence counting T(M,N,m), ranks of apparition, valuation-law profiling
// at multiples of the rank, and the normalized bound-ratio table.
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellseq/sequence.hpp"

namespace ellseq {

// Smallest n >= 1 with p | beta_n.
//
// Good-reduction primes up to `reduction_cap` walk the reduced curve over
// F_p: for Q = O the rank is the order of P mod p, otherwise the first n
// with nP + Q reducing to O (which may not exist; then nullopt). Larger
// primes fall back to a direct divisibility scan of at most `scan_cap`
// exact terms. Throws BadReductionError when p divides the discriminant.
inline std::optional<long> rank_of_apparition(Sequence& seq, const Int& p,
                                              long reduction_cap = 100000,
                                              long scan_cap = 200) {
    const Curve& curve = seq.config().curve;
    if (!good_reduction(curve, p)) throw BadReductionError(p.get_str());
    if (p <= reduction_cap) {
        ReducedCurve rc(curve, p);
        ResiduePoint pbar = rc.reduce(seq.config().P);
        ResiduePoint target = rc.negate(rc.reduce(seq.config().Q));
        // group order is below p + 1 + 2*sqrt(p) + 1
        Int sqrt_p;
        mpz_sqrt(sqrt_p.get_mpz_t(), p.get_mpz_t());
        long bound = static_cast<long>(p.get_si()) + 2 +
                     2 * (static_cast<long>(sqrt_p.get_si()) + 1);
        ResiduePoint r = pbar;
        for (long n = 1; n <= bound; ++n) {
            if (r == target) return n;
            r = rc.add(r, pbar);
        }
        return std::nullopt;
    }
    for (long n = 1; n <= scan_cap; ++n)
        if (mpz_divisible_p(seq.term(n).beta.get_mpz_t(), p.get_mpz_t())) return n;
    return std::nullopt;
}

struct CongruenceCount {
    long M = 0, N = 0;
    Int modulus;
    long count = 0;
    std::vector<long> indices;
    // Q = O fast path: first global solution and whether the in-window
    // multiples of it reproduce the direct scan exactly.
    std::optional<long> progression_rank;
    bool progression_consistent = true;
};

namespace detail {

// base p of m = p^s, s >= 1
inline std::optional<std::pair<Int, unsigned long>> prime_power_base(const Int& m) {
    if (m < 2) return std::nullopt;
    for (std::uint32_t p : small_primes()) {
        if (Int(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Int rest = m;
            unsigned long s = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++s;
            }
            if (rest != 1) return std::nullopt;
            return std::make_pair(Int(p), s);
        }
    }
    if (is_probable_prime(m)) return std::make_pair(m, 1ul);
    return std::nullopt;
}

}  // namespace detail

// Exact count of n in (M, M+N] with m | beta_n, m a prime power. The direct
// divisibility scan is authoritative; for Q = O the progression fast path is
// computed alongside and cross-checked.
inline CongruenceCount count_solutions(Sequence& seq, long M, long N, const Int& m) {
    if (!detail::prime_power_base(m))
        throw UsageError("modulus must be a prime power: " + m.get_str());
    CongruenceCount out;
    out.M = M;
    out.N = N;
    out.modulus = m;
    for (const auto& rec : seq.range(M, N))
        if (mpz_divisible_p(rec.beta.get_mpz_t(), m.get_mpz_t()))
            out.indices.push_back(rec.n);
    out.count = static_cast<long>(out.indices.size());

    if (seq.config().Q.is_infinity()) {
        for (long n = 1; n <= M + N; ++n) {
            if (mpz_divisible_p(seq.term(n).beta.get_mpz_t(), m.get_mpz_t())) {
                out.progression_rank = n;
                break;
            }
        }
        if (out.progression_rank) {
            std::vector<long> predicted;
            for (long n = *out.progression_rank; n <= M + N; n += *out.progression_rank)
                if (n > M) predicted.push_back(n);
            out.progression_consistent = predicted == out.indices;
        } else {
            out.progression_consistent = out.indices.empty();
        }
    }
    return out;
}

struct ValuationRow {
    long k = 0;
    long index = 0;            // k * rank
    unsigned long valuation = 0;
    unsigned long expected = 0;  // nu_p(beta_rank) + 2 nu_p(k)
    bool matches = false;
};

struct ValuationProfile {
    Int p;
    long rank = 0;
    unsigned long base_valuation = 0;
    std::vector<ValuationRow> rows;
    bool law_holds = true;  // deviations are reported, not asserted
};

// Tabulates nu_p(beta_{k * n_p}) for k = 1..k_max against the law
// nu_p(beta_{k n_p}) = nu_p(beta_{n_p}) + 2 nu_p(k). Q = O only.
inline ValuationProfile valuation_profile(Sequence& seq, const Int& p, long k_max) {
    if (!seq.config().Q.is_infinity())
        throw UsageError("valuation_profile requires Q = O");
    ValuationProfile prof;
    prof.p = p;
    std::optional<long> rank;
    if (good_reduction(seq.config().curve, p)) {
        rank = rank_of_apparition(seq, p);
    } else {
        for (long n = 1; n <= 200 && !rank; ++n)
            if (mpz_divisible_p(seq.term(n).beta.get_mpz_t(), p.get_mpz_t())) rank = n;
    }
    if (!rank) throw Error("rank of apparition not found for p = " + p.get_str());
    prof.rank = *rank;
    prof.base_valuation = p_adic_valuation(seq.term(prof.rank).beta, p);
    for (long k = 1; k <= k_max; ++k) {
        ValuationRow row;
        row.k = k;
        row.index = k * prof.rank;
        row.valuation = p_adic_valuation(seq.term(row.index).beta, p);
        row.expected = prof.base_valuation + 2 * p_adic_valuation(Int(k), p);
        row.matches = row.valuation == row.expected;
        if (!row.matches) prof.law_holds = false;
        prof.rows.push_back(row);
    }
    return prof;
}

struct RatioCell {
    long M = 0, N = 0;
    Int modulus;
    long count = 0;
    double ratio = 0.0;  // (T - 1) * sqrt(log m) / N
};

struct RatioTable {
    std::vector<RatioCell> cells;
    double max_ratio = 0.0;  // the empirical implied constant
};

inline RatioTable bound_ratio_check(Sequence& seq,
                                    const std::vector<std::pair<long, long>>& windows,
                                    const std::vector<Int>& moduli) {
    RatioTable table;
    bool first = true;
    for (const auto& [M, N] : windows) {
        for (const Int& m : moduli) {
            CongruenceCount cc = count_solutions(seq, M, N, m);
            RatioCell cell;
            cell.M = M;
            cell.N = N;
            cell.modulus = m;
            cell.count = cc.count;
            cell.ratio = static_cast<double>(cc.count - 1) *
                         std::sqrt(log_abs(m)) / static_cast<double>(N);
            if (first || cell.ratio > table.max_ratio) table.max_ratio = cell.ratio;
            first = false;
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

inline std::string to_csv(const RatioTable& table) {
    std::string csv = "M,N,m,count,ratio\n";
    char buf[64];
    for (const auto& cell : table.cells) {
        std::snprintf(buf, sizeof buf, "%.6f", cell.ratio);
        csv += std::to_string(cell.M) + "," + std::to_string(cell.N) + "," +
               cell.modulus.get_str() + "," + std::to_string(cell.count) + "," + buf + "\n";
    }
    return csv;
}

}  // namespace ellseq
