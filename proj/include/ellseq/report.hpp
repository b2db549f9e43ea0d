// JSON emission for the report-producing operations.
#pragma once

#include <json.hpp>

#include "ellseq/congruence.hpp"
#include "ellseq/heights.hpp"
#include "ellseq/lucas.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/somos.hpp"

namespace ellseq {

using json = nlohmann::json;

inline json to_json(const FactoredInteger& f) {
    json primes = json::object();
    for (const auto& [p, e] : f.primes) primes[p.get_str()] = e;
    json out{{"sign", f.sign}, {"primes", primes}};
    out["cofactor"] = f.cofactor ? json(f.cofactor->get_str()) : json(nullptr);
    return out;
}

inline json to_json(const WindowStats& stats) {
    json per_prime = json::object();
    for (const auto& [p, ps] : stats.per_prime)
        per_prime[p.get_str()] = json{{"r", ps.total}, {"s", ps.max}};
    json out{{"M", stats.M},
             {"N", stats.N},
             {"omega_lower", stats.omega_lower},
             {"exceptions", stats.exceptions},
             {"per_prime", per_prime}};
    out["omega_upper"] = stats.omega_upper ? json(*stats.omega_upper) : json(nullptr);
    out["unresolved_cofactors"] = stats.unresolved_cofactors;
    return out;
}

inline json to_json(const PrimitiveReport& rep) {
    std::vector<std::string> primes;
    for (const auto& [p, e] : rep.primitive_primes.primes) primes.push_back(p.get_str());
    return json{{"n", rep.n},
                {"primitive_part", rep.primitive_part.get_str()},
                {"primes", primes},
                {"has_primitive", rep.has_primitive},
                {"unresolved", rep.primitive_primes.cofactor.has_value()}};
}

inline json growth_fit_json(const GrowthFit& fit, double hhat) {
    return json{{"slope", fit.slope},
                {"hhat", hhat},
                {"residual_C", fit.residual_bound},
                {"range", {fit.M, fit.N}},
                {"intercept", fit.used_intercept ? json(fit.intercept) : json(nullptr)}};
}

inline json to_json(const MultiPrimitiveReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        std::vector<std::string> primes;
        for (const Int& p : row.primes) primes.push_back(p.get_str());
        rows.push_back(json{{"n", row.n},
                            {"index", row.index},
                            {"primes", primes},
                            {"count_lower", row.count_lower},
                            {"meets_target", row.meets_target},
                            {"unresolved", row.has_unresolved_cofactor},
                            {"verified_primitive", row.primes_verified}});
    }
    std::vector<std::string> primes;
    for (const Int& p : rep.primes) primes.push_back(p.get_str());
    return json{{"primes", primes},
                {"q", rep.q.get_str()},
                {"target", rep.target},
                {"rows", rows}};
}

inline json to_json(const ValuationProfile& prof) {
    json rows = json::array();
    for (const auto& row : prof.rows)
        rows.push_back(json{{"k", row.k},
                            {"index", row.index},
                            {"valuation", row.valuation},
                            {"expected", row.expected},
                            {"matches", row.matches}});
    return json{{"p", prof.p.get_str()},
                {"rank", prof.rank},
                {"base_valuation", prof.base_valuation},
                {"law_holds", prof.law_holds},
                {"rows", rows}};
}

inline json lucas_scan_json(const LucasConfig& cfg, long limit,
                            const std::vector<long>& exceptions) {
    return json{{"a", cfg.a.get_str()},
                {"b", cfg.b.get_str()},
                {"limit", limit},
                {"exceptions", exceptions}};
}

inline json to_json(const SchinzelReport& rep) {
    std::vector<std::string> primes;
    for (const auto& [p, e] : rep.factors.primes) primes.push_back(p.get_str());
    return json{{"k", rep.k},
                {"index", rep.index},
                {"primitive_part", rep.primitive_part.get_str()},
                {"primes", primes},
                {"composite", rep.composite}};
}

}  // namespace ellseq
