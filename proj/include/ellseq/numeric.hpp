// Arbitrary-precision value types (GMP) and small numeric helpers.
#pragma once

#include <gmpxx.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "ellseq/errors.hpp"

namespace ellseq {

using Int = mpz_class;
using Rat = mpq_class;

// Natural log of |n|; n must be nonzero. Exact enough for height work:
// the double mantissa carries ~1e-16 relative error.
inline double log_abs(const Int& n) {
    signed long exp2;
    double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp2) * M_LN2;
}

// Reduced rational with positive denominator.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Bounded decimal parse for indices and window sizes.
inline long parse_long(std::string_view text) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError("bad integer: '" + std::string(text) + "'");
    return value;
}

inline Int parse_int(std::string_view text) {
    if (text.empty()) throw UsageError("empty integer literal");
    Int v;
    if (mpz_set_str(v.get_mpz_t(), std::string(text).c_str(), 10) != 0)
        throw UsageError("bad integer literal: '" + std::string(text) + "'");
    return v;
}

// "p" or "p/q", reduced on return.
inline Rat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Process-wide seed for the randomized pieces (probable-prime bases, rho
// polynomial constants). All randomness is derived from this seed plus the
// number under test, so runs are reproducible regardless of call order.
inline std::atomic<std::uint64_t>& seed_slot() {
    static std::atomic<std::uint64_t> seed{0x9e3779b97f4a7c15ULL};
    return seed;
}

inline void set_random_seed(std::uint64_t s) { seed_slot().store(s); }
inline std::uint64_t random_seed() { return seed_slot().load(); }

}  // namespace ellseq
