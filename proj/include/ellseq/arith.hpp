// Integer factorization and multiplicative utilities: primality testing,
// budgeted factoring (trial division + Brent-variant Pollard rho), omega
// counting with unresolved-cofactor intervals, and p-adic valuations.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ellseq/numeric.hpp"

namespace ellseq {

struct FactorBudget {
    // Trial division runs over primes up to this bound (capped at 1e6, the
    // extent of the static sieve).
    unsigned long trial_division_bound = 1'000'000;
    // Brent-rho iteration cap per composite; exhaustion leaves a cofactor.
    unsigned long rho_iterations = 10'000'000;
};

// sign * prod(p^e) * cofactor reproduces the input exactly. A present
// cofactor is composite, coprime to the listed primes having been divided
// out, and larger than the trial-division bound squared.
struct FactoredInteger {
    int sign = 1;
    std::map<Int, unsigned long> primes;
    std::optional<Int> cofactor;

    bool complete() const { return !cofactor.has_value(); }

    Int value() const {
        Int v = sign;
        for (const auto& [p, e] : primes) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            v *= pe;
        }
        if (cofactor) v *= *cofactor;
        return v;
    }
};

struct OmegaBound {
    long lower = 0;
    std::optional<long> upper;
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline bool miller_rabin_witness(const Int& n, const Int& base, const Int& d, unsigned long s) {
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int n1 = n - 1;
    if (x == 1 || x == n1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n1) return false;
    }
    return true;  // base witnesses compositeness
}

// Deterministic below this threshold with the first 13 prime bases.
inline const Int& mr_deterministic_limit() {
    static const Int limit("3317044064679887385961981");
    return limit;
}

}  // namespace detail

// Deterministic for n below ~3.3e24 (13 fixed prime bases); strong probable
// prime with 30 seed-derived random bases above.
inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (n < detail::mr_deterministic_limit()) {
        for (unsigned p : small)
            if (detail::miller_rabin_witness(n, Int(p), d, s)) return false;
        return true;
    }

    gmp_randstate_t state;
    gmp_randinit_default(state);
    std::uint64_t mix = random_seed();
    mix = splitmix64(mix ^ fnv1a64(n.get_str()));
    gmp_randseed_ui(state, static_cast<unsigned long>(mix));
    Int span = n - 3, base;
    bool composite = false;
    for (int i = 0; i < 30 && !composite; ++i) {
        mpz_urandomm(base.get_mpz_t(), state, span.get_mpz_t());
        base += 2;  // base in [2, n-2]
        composite = detail::miller_rabin_witness(n, base, d, s);
    }
    gmp_randclear(state);
    return !composite;
}

namespace detail {

// Brent's cycle-finding variant of Pollard rho with batched gcds. Returns a
// nontrivial factor, or nullopt once the iteration budget is spent.
inline std::optional<Int> rho_brent(const Int& n, unsigned long budget, std::uint64_t mix) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    unsigned long used = 0;
    for (int attempt = 0; used < budget; ++attempt) {
        std::uint64_t h = splitmix64(mix + static_cast<std::uint64_t>(attempt));
        Int c(static_cast<unsigned long>(h % 0xffffff) + 1);
        Int y(static_cast<unsigned long>((h >> 24) % 0xffffff) + 2);
        Int x, ys, q(1), g(1);
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (unsigned long i = 0; i < r && used < budget; ++i, ++used)
                y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1 && used < budget) {
                ys = y;
                unsigned long steps = std::min(batch, r - k);
                for (unsigned long i = 0; i < steps && used < budget; ++i, ++used) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // replay the last batch one step at a time
            g = 1;
            for (unsigned long i = 0; i <= batch && g == 1; ++i) {
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g > 1 && g < n) return g;
        // retry with a different polynomial constant
    }
    return std::nullopt;
}

// Smallest k >= 2 with n = m^k, if any.
inline std::optional<std::pair<Int, unsigned long>> perfect_power(const Int& n) {
    if (n < 4 || !mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
    unsigned long maxk = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = 2; k <= maxk; ++k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0)
            return std::make_pair(root, k);
    }
    return std::nullopt;
}

}  // namespace detail

inline FactoredInteger factor(const Int& n, const FactorBudget& budget = {}) {
    if (n == 0) throw UsageError("factor: input must be nonzero");
    FactoredInteger out;
    Int m = n;
    if (m < 0) {
        out.sign = -1;
        m = -m;
    }
    if (m == 1) return out;

    unsigned long bound = std::min<unsigned long>(budget.trial_division_bound, 1'000'000);
    for (std::uint32_t p : detail::small_primes()) {
        if (p > bound) break;
        if (mpz_cmp_ui(m.get_mpz_t(), std::uint64_t(p) * p) < 0) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned long e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            out.primes[Int(p)] += e;
        }
    }
    if (m == 1) return out;
    if (m <= Int(bound) * Int(bound)) {  // survived trial division, hence prime
        out.primes[m] += 1;
        return out;
    }

    // (value, exponent multiplier) work list for the remaining composite part
    std::vector<std::pair<Int, unsigned long>> pending{{m, 1}};
    Int leftover(1);
    while (!pending.empty()) {
        auto [v, mult] = pending.back();
        pending.pop_back();
        if (v == 1) continue;
        if (is_probable_prime(v)) {
            out.primes[v] += mult;
            continue;
        }
        if (auto pw = detail::perfect_power(v)) {
            pending.emplace_back(pw->first, mult * pw->second);
            continue;
        }
        std::uint64_t mix = splitmix64(random_seed() ^ fnv1a64(v.get_str()));
        if (auto d = detail::rho_brent(v, budget.rho_iterations, mix)) {
            pending.emplace_back(*d, mult);
            pending.emplace_back(v / *d, mult);
        } else {
            Int ve;
            mpz_pow_ui(ve.get_mpz_t(), v.get_mpz_t(), mult);
            leftover *= ve;
        }
    }
    if (leftover > 1) out.cofactor = leftover;
    return out;
}

// Distinct-prime count as an interval: a present cofactor contributes exactly
// one to the lower bound and makes the upper bound unknown.
inline OmegaBound omega(const FactoredInteger& f) {
    OmegaBound b;
    b.lower = static_cast<long>(f.primes.size()) + (f.cofactor ? 1 : 0);
    if (!f.cofactor) b.upper = b.lower;
    return b;
}

inline unsigned long p_adic_valuation(const Int& n, const Int& p) {
    if (n == 0) throw UsageError("p_adic_valuation: input must be nonzero");
    Int rest;
    return static_cast<unsigned long>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// "p^e,p^e,...|cofactor" with the cofactor part omitted when fully factored;
// "1" is the empty product, a leading "-" carries the sign.
inline std::string format_factors(const FactoredInteger& f) {
    std::string s;
    if (f.sign < 0) s += "-";
    if (f.primes.empty()) {
        s += "1";
    } else {
        bool first = true;
        for (const auto& [p, e] : f.primes) {
            if (!first) s += ",";
            first = false;
            s += p.get_str() + "^" + std::to_string(e);
        }
    }
    if (f.cofactor) s += "|" + f.cofactor->get_str();
    return s;
}

inline FactoredInteger parse_factors(std::string_view text) {
    FactoredInteger f;
    if (text.empty()) throw UsageError("empty factorization");
    if (text.front() == '-') {
        f.sign = -1;
        text.remove_prefix(1);
    }
    auto bar = text.find('|');
    std::string_view body = text.substr(0, bar);
    if (bar != std::string_view::npos)
        f.cofactor = parse_int(text.substr(bar + 1));
    if (body != "1") {
        size_t pos = 0;
        while (pos < body.size()) {
            auto comma = body.find(',', pos);
            std::string_view item = body.substr(pos, comma == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : comma - pos);
            auto caret = item.find('^');
            if (caret == std::string_view::npos)
                throw UsageError("bad factor item: '" + std::string(item) + "'");
            Int p = parse_int(item.substr(0, caret));
            unsigned long e = std::stoul(std::string(item.substr(caret + 1)));
            f.primes[p] += e;
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    return f;
}

// Removes every prime of `support` from `v` entirely; multiplicities in
// `support` are irrelevant.
inline Int strip_support(Int v, const Int& support) {
    if (v == 0 || support == 0) return v;
    while (true) {
        Int g;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), support.get_mpz_t());
        if (g == 1) return v;
        v /= g;
    }
}

// Refines values > 1 into a pairwise-coprime basis covering the same prime
// support (multiplicities are not tracked).
inline std::vector<Int> coprime_refine(const std::vector<Int>& values) {
    std::vector<Int> basis;
    for (const Int& value : values) {
        Int x = abs(value);
        if (x <= 1) continue;
        std::vector<Int> updated;
        updated.reserve(basis.size() + 2);
        for (Int& b : basis) {
            if (x == 1) {
                updated.push_back(std::move(b));
                continue;
            }
            Int g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), b.get_mpz_t());
            if (g == 1) {
                updated.push_back(std::move(b));
                continue;
            }
            Int b_rest = strip_support(b, g);
            x = strip_support(x, g);
            updated.push_back(g);
            if (b_rest > 1) updated.push_back(std::move(b_rest));
        }
        if (x > 1) updated.push_back(std::move(x));
        basis = std::move(updated);
    }
    return basis;
}

// Sound distinct-prime lower bound across many factorizations: resolved
// primes dedup through a set; unresolved cofactors are first stripped of all
// resolved primes, then gcd-refined so each surviving basis element is
// guaranteed to hold at least one uncounted prime.
class OmegaAccumulator {
public:
    void add(const FactoredInteger& f) {
        for (const auto& [p, e] : f.primes) primes_.insert(p);
        if (f.cofactor) cofactors_.push_back(*f.cofactor);
    }

    const std::set<Int>& primes() const { return primes_; }
    bool exact() const { return cofactors_.empty(); }

    OmegaBound result() const {
        OmegaBound b;
        if (cofactors_.empty()) {
            b.lower = static_cast<long>(primes_.size());
            b.upper = b.lower;
            return b;
        }
        Int radical(1);
        for (const Int& p : primes_) radical *= p;
        std::vector<Int> reduced;
        reduced.reserve(cofactors_.size());
        for (const Int& c : cofactors_) {
            Int r = strip_support(c, radical);
            if (r > 1) reduced.push_back(r);
        }
        std::vector<Int> basis = coprime_refine(reduced);
        b.lower = static_cast<long>(primes_.size() + basis.size());
        if (basis.empty()) b.upper = b.lower;
        return b;
    }

private:
    std::set<Int> primes_;
    std::vector<Int> cofactors_;
};

}  // namespace ellseq
