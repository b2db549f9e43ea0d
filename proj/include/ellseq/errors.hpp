// Error types shared across the library. Computational failures derive from
// Error; malformed input and bad configuration use UsageError so the CLI can
// map them to distinct exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace ellseq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input/parse/configuration problems (CLI exit code 1).
struct UsageError : Error {
    using Error::Error;
};

struct SingularCurveError : Error {
    SingularCurveError() : Error("curve is singular (discriminant = 0)") {}
};

struct PointNotOnCurveError : Error {
    explicit PointNotOnCurveError(const std::string& what) : Error(what) {}
};

struct BadReductionError : Error {
    explicit BadReductionError(const std::string& prime)
        : Error("bad reduction: prime " + prime + " divides the discriminant") {}
};

struct TorsionPointError : Error {
    TorsionPointError() : Error("point is torsion") {}
};

// nP + Q = O was hit while generating a sequence; the standing assumption of
// every downstream statistic fails, so the whole run aborts.
struct HitInfinityError : Error {
    long index;
    explicit HitInfinityError(long n)
        : Error("nP+Q is the point at infinity at n = " + std::to_string(n)), index(n) {}
};

struct ZeroTermError : Error {
    explicit ZeroTermError(long index)
        : Error("somos term at index " + std::to_string(index) + " is zero") {}
};

struct ZeroStartError : Error {
    ZeroStartError() : Error("somos starting values must be nonzero") {}
};

struct DegenerateParamsError : Error {
    DegenerateParamsError() : Error("somos parameters A and B are both zero") {}
};

struct NonIntegralError : Error {
    explicit NonIntegralError(long index)
        : Error("somos term at index " + std::to_string(index) + " is not integral") {}
};

struct InvalidPrimeListError : Error {
    explicit InvalidPrimeListError(const std::string& what) : Error(what) {}
};

struct CacheError : Error {
    using Error::Error;
};

}  // namespace ellseq
