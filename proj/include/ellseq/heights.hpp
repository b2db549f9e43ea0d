// Naive and canonical heights over Q, and the quadratic growth fit for
// log beta_n.
//
// Normalization: hhat(P) = lim 4^{-k} log H(x(2^k P)) with H = max(|num|,|den|),
// so that log beta_n ~ hhat(P) * n^2 holds with no extra factor. The halved
// convention found in some references is hhat/2.
#pragma once

#include <cmath>
#include <vector>

#include "ellseq/sequence.hpp"

namespace ellseq {

// log max(|numerator|, denominator) of x(p); 0 for the point at infinity.
inline double naive_height(const Point& p) {
    if (p.is_infinity()) return 0.0;
    const Int& num = p.x().get_num();
    const Int& den = p.x().get_den();
    Int m = abs(num);
    if (m < den) m = den;
    if (m == 1) return 0.0;
    return log_abs(m);
}

// Doubling limit with exact point arithmetic. Estimates est_k =
// 4^{-k} * naive_height(2^k p) converge at rate 4^{-k}; early estimates can
// agree by accident (integral x-coordinates), so convergence requires two
// consecutive differences below eps. k is capped (default 10; coordinate
// sizes grow fourfold per step).
inline double canonical_height(const Curve& c, const Point& p, double eps = 1e-6,
                               int k_cap = 10) {
    require_on_curve(c, p, "canonical_height");
    if (torsion_order(c, p).has_value()) throw TorsionPointError();
    double prev2 = naive_height(p);  // est_0
    Point q = detail::add_unchecked(c, p, p);
    double prev1 = naive_height(q) / 4.0;  // est_1
    double est = prev1;
    for (int k = 2; k <= k_cap; ++k) {
        q = detail::add_unchecked(c, q, q);
        est = naive_height(q) / std::pow(4.0, k);
        if (std::abs(est - prev1) < eps && std::abs(prev1 - prev2) < eps) return est;
        prev2 = prev1;
        prev1 = est;
    }
    return est;
}

struct GrowthFit {
    double slope = 0.0;            // fitted coefficient of n^2
    double intercept = 0.0;        // only when fitted with an intercept (Q != O)
    bool used_intercept = false;
    double residual_bound = 0.0;   // max |log beta_n - slope n^2| / n over the window
    long M = 0, N = 0;
};

// Least squares of y_n against n^2 over (index, y) samples; the residual
// bound is max |y_n - slope n^2| / n.
inline GrowthFit fit_quadratic(const std::vector<std::pair<long, double>>& samples,
                               bool use_intercept) {
    GrowthFit fit;
    fit.used_intercept = use_intercept;
    double stt = 0, sty = 0, st = 0, sy = 0;
    for (const auto& [n, y] : samples) {
        double t = static_cast<double>(n) * static_cast<double>(n);
        stt += t * t;
        sty += t * y;
        st += t;
        sy += y;
    }
    const double k = static_cast<double>(samples.size());
    if (use_intercept) {
        fit.slope = (sty - st * sy / k) / (stt - st * st / k);
        fit.intercept = sy / k - fit.slope * st / k;
    } else {
        fit.slope = sty / stt;
    }
    for (const auto& [n, y] : samples) {
        double t = static_cast<double>(n) * static_cast<double>(n);
        double resid = std::abs(y - fit.slope * t) / static_cast<double>(n);
        fit.residual_bound = std::max(fit.residual_bound, resid);
    }
    return fit;
}

// Fit of log beta_n over n in (M, M+N]. Q = O uses no intercept; Q != O
// contributes a genuine constant/linear term, so an intercept is fitted.
inline GrowthFit growth_fit(Sequence& seq, long M, long N) {
    std::vector<std::pair<long, double>> samples;
    for (const auto& rec : seq.range(M, N))
        samples.emplace_back(rec.n, rec.beta == 1 ? 0.0 : log_abs(rec.beta));
    GrowthFit fit = fit_quadratic(samples, !seq.config().Q.is_infinity());
    fit.M = M;
    fit.N = N;
    return fit;
}

}  // namespace ellseq
