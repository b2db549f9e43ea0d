// Command-line front end. Subcommands map one-to-one onto the experiment
// operations; every run with the same arguments and seed produces
// byte-identical output. Exit codes: 0 success, 1 usage error, 2 computation
// failure, 3 verification failure.
#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ellseq/report.hpp"
#include "ellseq/verify.hpp"

namespace ellseq {

namespace cli_detail {

struct Context {
    std::string cache_dir;
    std::uint64_t seed = random_seed();
    unsigned long rho_budget = FactorBudget{}.rho_iterations;
    std::string output_path;

    std::string curve_text, p_text, q_text = "O", label;

    FactorBudget budget() const {
        FactorBudget b;
        b.rho_iterations = rho_budget;
        return b;
    }

    CacheStore store() const { return CacheStore(cache_dir); }

    bool has_explicit_config() const { return !curve_text.empty(); }

    SequenceConfig explicit_config() const {
        if (curve_text.empty()) throw UsageError("missing --curve");
        if (p_text.empty()) throw UsageError("missing --P");
        return SequenceConfig{parse_curve(curve_text), parse_point(p_text),
                              parse_point(q_text), label};
    }

    // Config from flags, or from the cache header when only a label is given.
    Sequence open_sequence() const {
        CacheStore cs = store();
        if (!has_explicit_config()) {
            if (label.empty()) throw UsageError("need --curve/--P or a cached --label");
            if (!cs.has(label)) throw UsageError("label '" + label + "' not in cache");
            return cs.load(label);
        }
        SequenceConfig cfg = explicit_config();
        if (!label.empty()) return cs.open(cfg);
        return Sequence(cfg);
    }

    void save_if_labelled(const Sequence& seq) const {
        if (!seq.config().label.empty()) store().save(seq);
    }
};

inline void add_config_options(CLI::App* cmd, Context& ctx) {
    cmd->add_option("--curve", ctx.curve_text, "curve 'a1,a2,a3,a4,a6'");
    cmd->add_option("--P", ctx.p_text, "point P 'x,y' (exact rationals)");
    cmd->add_option("--Q", ctx.q_text, "point Q 'x,y' or 'O'")->capture_default_str();
    cmd->add_option("--label", ctx.label, "cache label");
}

inline std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw UsageError("range must be 'A..B': '" + text + "'");
    long a = parse_long(std::string_view(text).substr(0, dots));
    long b = parse_long(std::string_view(text).substr(dots + 2));
    if (a < 1 || b < a) throw UsageError("range must satisfy 1 <= A <= B");
    return {a, b};
}

inline std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    for (auto part : detail::split(text, ','))
        out.push_back(parse_int(part));
    return out;
}

inline std::vector<std::pair<long, long>> parse_windows(const std::string& text) {
    std::vector<std::pair<long, long>> out;
    for (auto part : detail::split(text, ';')) {
        auto colon = part.find(':');
        if (colon == std::string_view::npos)
            throw UsageError("windows must be 'M:N[;M:N...]'");
        out.emplace_back(parse_long(part.substr(0, colon)),
                         parse_long(part.substr(colon + 1)));
    }
    return out;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out_stream,
                   std::ostream& err_stream) {
    using cli_detail::Context;
    Context ctx;
    const char* env_cache = std::getenv("ELLSEQ_CACHE_DIR");
    ctx.cache_dir = env_cache ? env_cache : ".ellseq-cache";

    CLI::App app{"exact elliptic-curve denominator sequences, Somos sequences, "
                 "and primitive-divisor experiments"};
    app.require_subcommand(1);
    app.add_option("--cache-dir", ctx.cache_dir, "cache root (env ELLSEQ_CACHE_DIR)")
        ->capture_default_str();
    app.add_option("--seed", ctx.seed, "seed for randomized primality/factoring")
        ->capture_default_str();
    app.add_option("--budget", ctx.rho_budget, "rho iteration budget per composite")
        ->capture_default_str();
    app.add_option("--output", ctx.output_path, "write the report to a file");

    std::ofstream file_out;
    auto out = [&]() -> std::ostream& {
        if (!ctx.output_path.empty() && !file_out.is_open()) {
            file_out.open(ctx.output_path, std::ios::trunc);
            if (!file_out) throw UsageError("cannot open output file " + ctx.output_path);
        }
        return file_out.is_open() ? static_cast<std::ostream&>(file_out) : out_stream;
    };
    auto emit_json = [&](json j) {
        j["seed"] = ctx.seed;
        out() << j.dump(2) << "\n";
    };

    // seq
    auto* seq_cmd = app.add_subcommand("seq", "generate (n, beta_n) over a range");
    cli_detail::add_config_options(seq_cmd, ctx);
    std::string range_text = "1..20";
    seq_cmd->add_option("--range", range_text, "index range 'A..B'")->capture_default_str();
    seq_cmd->callback([&] {
        auto [a, b] = cli_detail::parse_range(range_text);
        Sequence seq = ctx.open_sequence();
        for (long n = a; n <= b; ++n)
            out() << n << "\t" << seq.term(n).beta.get_str() << "\n";
        ctx.save_if_labelled(seq);
    });

    // primitive
    auto* prim_cmd = app.add_subcommand("primitive", "primitive-divisor scan");
    cli_detail::add_config_options(prim_cmd, ctx);
    long prim_limit = 60;
    prim_cmd->add_option("--limit", prim_limit, "scan indices 1..limit")->capture_default_str();
    prim_cmd->callback([&] {
        set_random_seed(ctx.seed);
        Sequence seq = ctx.open_sequence();
        PrimitiveScanner scanner(seq, ctx.budget());
        json reports = json::array();
        std::vector<long> exceptions;
        for (long n = 1; n <= prim_limit; ++n) {
            const PrimitiveReport& rep = scanner.report(n);
            if (!rep.has_primitive) exceptions.push_back(n);
            reports.push_back(to_json(rep));
        }
        emit_json(json{{"label", seq.config().label},
                       {"limit", prim_limit},
                       {"exceptions", exceptions},
                       {"reports", reports}});
        ctx.save_if_labelled(seq);
    });

    // omega-window
    auto* omega_cmd = app.add_subcommand("omega-window", "distinct primes over a window");
    cli_detail::add_config_options(omega_cmd, ctx);
    long win_m = 0, win_n = 10;
    omega_cmd->add_option("--M", win_m, "window start (exclusive)")->capture_default_str();
    omega_cmd->add_option("--N", win_n, "window length")->capture_default_str();
    omega_cmd->callback([&] {
        set_random_seed(ctx.seed);
        Sequence seq = ctx.open_sequence();
        WindowStats stats = omega_window(seq, win_m, win_n, ctx.budget());
        emit_json(to_json(stats));
        ctx.save_if_labelled(seq);
    });

    // height
    auto* height_cmd = app.add_subcommand("height", "canonical height of P");
    cli_detail::add_config_options(height_cmd, ctx);
    double eps = 1e-6;
    height_cmd->add_option("--eps", eps, "doubling-limit tolerance")->capture_default_str();
    height_cmd->callback([&] {
        SequenceConfig cfg = ctx.explicit_config();
        double hhat = canonical_height(cfg.curve, cfg.P, eps);
        emit_json(json{{"hhat", hhat},
                       {"naive", naive_height(cfg.P)},
                       {"eps", eps},
                       {"point", to_string(cfg.P)},
                       {"curve", to_string(cfg.curve)}});
    });

    // growth-fit
    auto* fit_cmd = app.add_subcommand("growth-fit", "quadratic growth fit of log beta_n");
    cli_detail::add_config_options(fit_cmd, ctx);
    long fit_m = 20, fit_n = 100;
    fit_cmd->add_option("--M", fit_m, "window start (exclusive)")->capture_default_str();
    fit_cmd->add_option("--N", fit_n, "window length")->capture_default_str();
    fit_cmd->callback([&] {
        Sequence seq = ctx.open_sequence();
        GrowthFit fit = growth_fit(seq, fit_m, fit_n);
        double hhat = canonical_height(seq.config().curve, seq.config().P, 1e-6);
        emit_json(growth_fit_json(fit, hhat));
        ctx.save_if_labelled(seq);
    });

    // congruence
    auto* cong_cmd = app.add_subcommand("congruence", "T(M,N,m) table / rank / valuations");
    cli_detail::add_config_options(cong_cmd, ctx);
    std::string windows_text = "0:100", moduli_text = "2,4,8,3,9,5,7,23";
    std::string rank_p, profile_p;
    long kmax = 12;
    cong_cmd->add_option("--windows", windows_text, "'M:N[;M:N...]'")->capture_default_str();
    cong_cmd->add_option("--moduli", moduli_text, "prime powers, comma separated")
        ->capture_default_str();
    cong_cmd->add_option("--rank", rank_p, "report the rank of apparition of a prime");
    cong_cmd->add_option("--profile", profile_p, "valuation profile at a prime");
    cong_cmd->add_option("--kmax", kmax, "profile depth")->capture_default_str();
    cong_cmd->callback([&] {
        set_random_seed(ctx.seed);
        Sequence seq = ctx.open_sequence();
        if (!rank_p.empty()) {
            auto rank = rank_of_apparition(seq, parse_int(rank_p));
            emit_json(json{{"p", rank_p},
                           {"rank", rank ? json(*rank) : json(nullptr)}});
        } else if (!profile_p.empty()) {
            emit_json(to_json(valuation_profile(seq, parse_int(profile_p), kmax)));
        } else {
            RatioTable table = bound_ratio_check(seq, cli_detail::parse_windows(windows_text),
                                                 cli_detail::parse_int_list(moduli_text));
            out() << to_csv(table);
        }
        ctx.save_if_labelled(seq);
    });

    // somos-gen
    auto* sg_cmd = app.add_subcommand("somos-gen", "somos sequence from a recurrence");
    std::string a_text = "1", b_text = "1", init_text = "1,1,1,1", params_text;
    long somos_count = 12;
    bool do_infer = false;
    sg_cmd->add_option("--A", a_text, "coefficient A")->capture_default_str();
    sg_cmd->add_option("--B", b_text, "coefficient B")->capture_default_str();
    sg_cmd->add_option("--init", init_text, "four initial terms")->capture_default_str();
    sg_cmd->add_option("--params", params_text, "combined 'A,B;t0,t1,t2,t3'");
    sg_cmd->add_option("--count", somos_count, "total terms")->capture_default_str();
    sg_cmd->add_flag("--infer", do_infer, "re-infer (A,B) from the terms and print JSON");
    sg_cmd->callback([&] {
        Rat A, B;
        std::array<Rat, 4> init;
        if (!params_text.empty()) {
            auto semi = params_text.find(';');
            if (semi == std::string::npos)
                throw UsageError("--params must be 'A,B;t0,t1,t2,t3'");
            auto ab = detail::split(std::string_view(params_text).substr(0, semi), ',');
            auto ts = detail::split(std::string_view(params_text).substr(semi + 1), ',');
            if (ab.size() != 2 || ts.size() != 4)
                throw UsageError("--params must be 'A,B;t0,t1,t2,t3'");
            A = parse_rat(ab[0]);
            B = parse_rat(ab[1]);
            for (int i = 0; i < 4; ++i) init[static_cast<size_t>(i)] = parse_rat(ts[i]);
        } else {
            A = parse_rat(a_text);
            B = parse_rat(b_text);
            auto ts = detail::split(init_text, ',');
            if (ts.size() != 4) throw UsageError("--init needs exactly four terms");
            for (int i = 0; i < 4; ++i) init[static_cast<size_t>(i)] = parse_rat(ts[i]);
        }
        SomosSequence seq = somos_from_recurrence(A, B, init, somos_count, 0);
        if (do_infer) {
            ABInference inf = infer_somos_parameters(seq.terms);
            json j{{"kind", inf.kind == ABInference::Kind::Unique ? "unique" : "inconsistent"}};
            if (inf.kind == ABInference::Kind::Unique) {
                j["A"] = rat_to_string(inf.A);
                j["B"] = rat_to_string(inf.B);
            } else if (inf.line) {
                j["line"] = {rat_to_string((*inf.line)[0]), rat_to_string((*inf.line)[1]),
                             rat_to_string((*inf.line)[2])};
            }
            emit_json(j);
            return;
        }
        for (long i = seq.first_index(); i <= seq.last_index(); ++i)
            out() << i << "\t" << rat_to_string(seq.at(i)) << "\n";
    });

    // somos-from-curve
    auto* sc_cmd = app.add_subcommand("somos-from-curve", "somos sequence from curve points");
    cli_detail::add_config_options(sc_cmd, ctx);
    std::string s_prev_text = "1", s_zero_text = "1";
    long sc_count = 30;
    bool sc_infer = false;
    sc_cmd->add_option("--s-1", s_prev_text, "starting term s_{-1}")->capture_default_str();
    sc_cmd->add_option("--s0", s_zero_text, "starting term s_0")->capture_default_str();
    sc_cmd->add_option("--count", sc_count, "generated terms")->capture_default_str();
    sc_cmd->add_flag("--infer", sc_infer, "infer (A,B) from the generated terms");
    sc_cmd->callback([&] {
        SequenceConfig cfg = ctx.explicit_config();
        SomosSequence seq =
            somos_from_curve(cfg, parse_rat(s_prev_text), parse_rat(s_zero_text), sc_count);
        if (sc_infer) {
            ABInference inf = infer_somos_parameters(seq.terms);
            json j{{"kind", inf.kind == ABInference::Kind::Unique ? "unique" : "inconsistent"}};
            if (inf.kind == ABInference::Kind::Unique) {
                j["A"] = rat_to_string(inf.A);
                j["B"] = rat_to_string(inf.B);
            }
            emit_json(j);
            return;
        }
        for (long i = seq.first_index(); i <= seq.last_index(); ++i)
            out() << i << "\t" << rat_to_string(seq.at(i)) << "\n";
    });

    // lucas
    auto* lucas_cmd = app.add_subcommand("lucas", "a^n - b^n baseline checks");
    std::string lucas_a = "2", lucas_b = "1";
    long lucas_limit = 60, schinzel_k = 0;
    lucas_cmd->add_option("--a", lucas_a, "a")->capture_default_str();
    lucas_cmd->add_option("--b", lucas_b, "b")->capture_default_str();
    lucas_cmd->add_option("--limit", lucas_limit, "scan limit")->capture_default_str();
    lucas_cmd->add_option("--schinzel", schinzel_k, "composite-primitive check at odd k > 5");
    lucas_cmd->callback([&] {
        set_random_seed(ctx.seed);
        if (schinzel_k > 0) {
            emit_json(to_json(schinzel_mersenne_check(schinzel_k, 15, ctx.budget())));
            return;
        }
        LucasConfig cfg = validate_lucas(parse_int(lucas_a), parse_int(lucas_b));
        emit_json(lucas_scan_json(cfg, lucas_limit, lucas_zsigmondy_scan(cfg, lucas_limit)));
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "summarize a cached sequence");
    cli_detail::add_config_options(report_cmd, ctx);
    report_cmd->callback([&] {
        if (ctx.label.empty()) throw UsageError("report needs --label");
        CacheStore cs = ctx.store();
        if (!cs.has(ctx.label)) throw UsageError("label '" + ctx.label + "' not in cache");
        Sequence seq = cs.load(ctx.label);
        long factored = 0;
        for (long n = 1; n <= seq.computed_up_to(); ++n)
            if (seq.term(n).factors) ++factored;
        emit_json(json{{"label", seq.config().label},
                       {"curve", to_string(seq.config().curve)},
                       {"P", to_string(seq.config().P)},
                       {"Q", to_string(seq.config().Q)},
                       {"max_n", seq.computed_up_to()},
                       {"factored_records", factored}});
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    std::string profile_text = "quick";
    verify_cmd->add_option("--profile", profile_text, "quick | full")->capture_default_str();
    int verify_failures = -1;
    verify_cmd->callback([&] {
        Profile profile;
        if (profile_text == "quick") profile = Profile::Quick;
        else if (profile_text == "full") profile = Profile::Full;
        else throw UsageError("unknown profile '" + profile_text + "' (quick | full)");
        set_random_seed(ctx.seed);
        out() << "profile=" << profile_text << " seed=" << ctx.seed
              << " budget=" << ctx.rho_budget << "\n";
        verify_failures = print_acceptance(run_acceptance(profile, ctx.budget()), out());
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out_stream << app.help();
            return 0;
        }
        err_stream << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        err_stream << "usage error: " << e.what() << "\n";
        return 1;
    }
    if (verify_failures > 0) return 3;
    return 0;
}

// Wrapper that maps library exceptions to exit codes; main() delegates here.
inline int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(std::move(args), out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ellseq
