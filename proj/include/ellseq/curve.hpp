// Exact group law on a generalized Weierstrass curve over Q:
//   y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
// with integral coefficients. All arithmetic is exact; rationals are kept
// reduced with positive denominators. Includes torsion detection (Mazur
// bound) and reduction modulo good primes.
//
// The model is assumed minimal; minimality is NOT verified. Non-minimal
// input may perturb small-prime valuations of the denominator sequence.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellseq/numeric.hpp"

namespace ellseq {

struct Curve {
    Int a1, a2, a3, a4, a6;
    Int disc;  // nonzero; standard b2,b4,b6,b8 covariant discriminant
};

inline Int compute_discriminant(const Int& a1, const Int& a2, const Int& a3,
                                const Int& a4, const Int& a6) {
    Int b2 = a1 * a1 + 4 * a2;
    Int b4 = 2 * a4 + a1 * a3;
    Int b6 = a3 * a3 + 4 * a6;
    Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

inline Curve validate_curve(const Int& a1, const Int& a2, const Int& a3,
                            const Int& a4, const Int& a6) {
    Int disc = compute_discriminant(a1, a2, a3, a4, a6);
    if (disc == 0) throw SingularCurveError();
    return Curve{a1, a2, a3, a4, a6, disc};
}

class Point {
public:
    Point() = default;  // point at infinity
    Point(Rat x, Rat y) : infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

    static Point infinity() { return Point(); }

    bool is_infinity() const { return infinity_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.infinity_ != b.infinity_) return false;
        if (a.infinity_) return true;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

private:
    bool infinity_ = true;
    Rat x_, y_;
};

inline bool on_curve(const Curve& c, const Point& p) {
    if (p.is_infinity()) return true;
    const Rat& x = p.x();
    const Rat& y = p.y();
    Rat lhs = y * y + Rat(c.a1) * x * y + Rat(c.a3) * y;
    Rat rhs = x * x * x + Rat(c.a2) * x * x + Rat(c.a4) * x + Rat(c.a6);
    return lhs == rhs;
}

inline void require_on_curve(const Curve& c, const Point& p, const char* who) {
    if (!on_curve(c, p))
        throw PointNotOnCurveError(std::string(who) + ": point is not on the curve");
}

// -(x, y) = (x, -y - a1*x - a3)
inline Point negate_point(const Curve& c, const Point& p) {
    if (p.is_infinity()) return p;
    return Point(p.x(), -p.y() - Rat(c.a1) * p.x() - Rat(c.a3));
}

namespace detail {

// Chord-tangent addition without on-curve validation. Exceptional cases
// (either operand O, vertical chord, tangent at a 2-torsion point) are
// enumerated explicitly.
inline Point add_unchecked(const Curve& c, const Point& p, const Point& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const Rat& x1 = p.x();
    const Rat& y1 = p.y();
    const Rat& x2 = q.x();
    const Rat& y2 = q.y();
    Rat lambda, nu;
    if (x1 == x2) {
        // same x: q is either p or -p
        if (y1 + y2 + Rat(c.a1) * x1 + Rat(c.a3) == 0) return Point::infinity();
        Rat denom = 2 * y1 + Rat(c.a1) * x1 + Rat(c.a3);
        lambda = (3 * x1 * x1 + 2 * Rat(c.a2) * x1 + Rat(c.a4) - Rat(c.a1) * y1) / denom;
        nu = (-(x1 * x1 * x1) + Rat(c.a4) * x1 + 2 * Rat(c.a6) - Rat(c.a3) * y1) / denom;
    } else {
        lambda = (y2 - y1) / (x2 - x1);
        nu = y1 - lambda * x1;
    }
    Rat x3 = lambda * lambda + Rat(c.a1) * lambda - Rat(c.a2) - x1 - x2;
    Rat y3 = -(lambda + Rat(c.a1)) * x3 - nu - Rat(c.a3);
    return Point(std::move(x3), std::move(y3));
}

}  // namespace detail

inline Point add(const Curve& c, const Point& p, const Point& q) {
    require_on_curve(c, p, "add");
    require_on_curve(c, q, "add");
    return detail::add_unchecked(c, p, q);
}

inline Point scalar_mul(const Curve& c, const Int& k, const Point& p) {
    if (k < 0) throw UsageError("scalar_mul: multiplier must be nonnegative");
    require_on_curve(c, p, "scalar_mul");
    Point result = Point::infinity();
    Point base = p;
    Int m = k;
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t())) result = detail::add_unchecked(c, result, base);
        mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), 1);
        if (m > 0) base = detail::add_unchecked(c, base, base);
    }
    return result;
}

// Order of p if it is torsion. Over Q the order is at most 12 (Mazur), so
// twelve additions decide; nullopt means non-torsion.
inline std::optional<int> torsion_order(const Curve& c, const Point& p) {
    require_on_curve(c, p, "torsion_order");
    if (p.is_infinity()) return 1;
    Point r = p;
    for (int k = 1; k <= 12; ++k) {
        if (r.is_infinity()) return k;
        r = detail::add_unchecked(c, r, p);
    }
    return r.is_infinity() ? std::optional<int>(12) : std::nullopt;
}

// ---- text formats ----
// Curve: "a1,a2,a3,a4,a6" (decimal integers).
// Point: "x,y" with exact rationals ("/1" optional), or the literal "O".

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next == std::string_view::npos
                                          ? std::string_view::npos
                                          : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

}  // namespace detail

inline Curve parse_curve(std::string_view text) {
    auto parts = detail::split(text, ',');
    if (parts.size() != 5)
        throw UsageError("curve must be 'a1,a2,a3,a4,a6': '" + std::string(text) + "'");
    return validate_curve(parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]),
                          parse_int(parts[3]), parse_int(parts[4]));
}

inline Point parse_point(std::string_view text) {
    if (text == "O") return Point::infinity();
    auto parts = detail::split(text, ',');
    if (parts.size() != 2)
        throw UsageError("point must be 'x,y' or 'O': '" + std::string(text) + "'");
    return Point(parse_rat(parts[0]), parse_rat(parts[1]));
}

inline std::string to_string(const Curve& c) {
    return c.a1.get_str() + "," + c.a2.get_str() + "," + c.a3.get_str() + "," +
           c.a4.get_str() + "," + c.a6.get_str();
}

inline std::string to_string(const Point& p) {
    if (p.is_infinity()) return "O";
    return rat_to_string(p.x()) + "," + rat_to_string(p.y());
}

// ---- reduction modulo a good prime ----

struct ResiduePoint {
    bool infinity = true;
    Int x, y;

    friend bool operator==(const ResiduePoint& a, const ResiduePoint& b) {
        if (a.infinity != b.infinity) return false;
        if (a.infinity) return true;
        return a.x == b.x && a.y == b.y;
    }
};

inline bool good_reduction(const Curve& c, const Int& ell) {
    return !mpz_divisible_p(c.disc.get_mpz_t(), ell.get_mpz_t());
}

// Group law on the reduced curve over F_ell, ell a good-reduction prime.
class ReducedCurve {
public:
    ReducedCurve(const Curve& c, Int ell) : ell_(std::move(ell)) {
        if (!good_reduction(c, ell_)) throw BadReductionError(ell_.get_str());
        a1_ = mod(c.a1);
        a2_ = mod(c.a2);
        a3_ = mod(c.a3);
        a4_ = mod(c.a4);
        a6_ = mod(c.a6);
    }

    const Int& modulus() const { return ell_; }

    // Image of an exact rational point: O when ell divides the denominator
    // of x, otherwise coordinate-wise reduction.
    ResiduePoint reduce(const Point& p) const {
        if (p.is_infinity()) return ResiduePoint{};
        if (mpz_divisible_p(p.x().get_den().get_mpz_t(), ell_.get_mpz_t()))
            return ResiduePoint{};
        return ResiduePoint{false, mod_rat(p.x()), mod_rat(p.y())};
    }

    ResiduePoint negate(const ResiduePoint& p) const {
        if (p.infinity) return p;
        return ResiduePoint{false, p.x, mod(-p.y - a1_ * p.x - a3_)};
    }

    ResiduePoint add(const ResiduePoint& p, const ResiduePoint& q) const {
        if (p.infinity) return q;
        if (q.infinity) return p;
        Int lambda, nu;
        if (p.x == q.x) {
            if (mod(p.y + q.y + a1_ * p.x + a3_) == 0) return ResiduePoint{};
            Int denom = mod(2 * p.y + a1_ * p.x + a3_);
            Int inv = invert(denom);
            lambda = mod((3 * p.x * p.x + 2 * a2_ * p.x + a4_ - a1_ * p.y) * inv);
            nu = mod((-(p.x * p.x * p.x) + a4_ * p.x + 2 * a6_ - a3_ * p.y) * inv);
        } else {
            Int inv = invert(mod(q.x - p.x));
            lambda = mod((q.y - p.y) * inv);
            nu = mod(p.y - lambda * p.x);
        }
        Int x3 = mod(lambda * lambda + a1_ * lambda - a2_ - p.x - q.x);
        Int y3 = mod(-(lambda + a1_) * x3 - nu - a3_);
        return ResiduePoint{false, x3, y3};
    }

private:
    Int mod(const Int& v) const {
        Int r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), ell_.get_mpz_t());
        return r;
    }
    Int mod_rat(const Rat& v) const {
        return mod(v.get_num() * invert(mod(v.get_den())));
    }
    Int invert(const Int& v) const {
        Int r;
        if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), ell_.get_mpz_t()) == 0)
            throw Error("not invertible mod " + ell_.get_str());
        return r;
    }

    Int ell_, a1_, a2_, a3_, a4_, a6_;
};

inline ResiduePoint reduce_mod_p(const Curve& c, const Point& p, const Int& ell) {
    require_on_curve(c, p, "reduce_mod_p");
    return ReducedCurve(c, ell).reduce(p);
}

}  // namespace ellseq
