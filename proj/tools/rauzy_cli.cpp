#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rauzy/analysis.hpp"
#include "rauzy/evolution.hpp"
#include "rauzy/io.hpp"
#include "rauzy/oracle.hpp"
#include "rauzy/rauzy_graph.hpp"
#include "rauzy/scheme.hpp"

namespace {

using namespace rauzy;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndecided = 2;

struct CommonOpts {
    std::string source_path;
    std::int64_t k0 = 1;
    std::int64_t steps = 30;
    std::int64_t horizon = (1LL << 22);
    std::int64_t bound_paths = 6;
    std::int64_t bound_factors = 20;
    std::int64_t length = 64;
    std::string format = "text";
    std::string out_path;
    std::uint64_t seed = 1;
    std::string dump_dot_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_source = true) {
    auto* s = cmd->add_option("--source", o.source_path, "word source config file");
    if (needs_source) s->required();
    cmd->add_option("--k0", o.k0, "starting Rauzy order");
    cmd->add_option("--steps", o.steps, "evolution steps");
    cmd->add_option("--horizon", o.horizon, "oracle horizon cap (letters)");
    cmd->add_option("--bound-paths", o.bound_paths, "symmetric path bound L");
    cmd->add_option("--bound-factors", o.bound_factors, "factor length bound M");
    cmd->add_option("--length", o.length, "prefix length");
    cmd->add_option("--format", o.format, "output format: text|json|csv|dot");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--seed", o.seed, "seed for randomized utilities");
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + o.out_path);
    f << content;
}

FactorOracle make_oracle(const CommonOpts& o) {
    return FactorOracle(load_source_config(o.source_path), o.horizon);
}

int cmd_word(const CommonOpts& o) {
    FactorOracle oracle = make_oracle(o);
    const auto p = oracle.prefix(static_cast<std::size_t>(o.length));
    if (o.format == "json") {
        nlohmann::json j;
        j["schema"] = "rauzy.word/1";
        j["source"] = oracle.source().describe();
        j["length"] = o.length;
        j["prefix"] = std::string(p);
        emit(o, j.dump(2));
    } else {
        emit(o, std::string(p));
    }
    return kExitOk;
}

int cmd_analyze(const CommonOpts& o) {
    FactorOracle oracle = make_oracle(o);
    const std::int64_t n = std::max<std::int64_t>(2, o.bound_factors);
    // Complexity and balance need certified factor sets; the probes work from
    // the buffer even when certification is out of reach.
    ComplexityProfile cp;
    BalanceReport br;
    bool certified = true;
    try {
        cp = complexity_profile(oracle, n);
        br = balance_check(oracle, n);
    } catch (const HorizonExceededError&) {
        certified = false;
        std::int64_t m = n;
        while (m > 1 && cp.values.empty()) {
            try {
                cp = complexity_profile(oracle, m);
            } catch (const HorizonExceededError&) {
                --m;
            }
        }
    }
    const RecurrenceProfile rp = recurrence_exponent(oracle, n);
    const PeriodicityVerdict pv = periodicity_probe(oracle, n);
    const URVerdict uv = uniform_recurrence_probe(oracle, 8, 8);

    if (o.format == "csv") {
        emit(o, profile_to_csv(cp) + "\n" + recurrence_to_csv(rp));
    } else if (o.format == "json") {
        emit(o, analysis_to_json(oracle.source().describe(), cp, rp, pv, uv, br));
    } else {
        std::ostringstream os;
        os << "source: " << oracle.source().describe() << "\n";
        os << "P(1.." << cp.values.size() << ")" << (certified ? "" : " [uncertified beyond]")
           << ":";
        for (auto v : cp.values) os << " " << v;
        if (cp.values.size() >= 2)
            os << "\nmax first difference: " << first_difference_bound(cp) << "\n";
        else
            os << "\n";
        os << "P2(1.." << n << "):";
        for (const auto& v : rp.values) {
            if (v) os << " " << *v;
            else os << " ?";
        }
        os << "\nperiodicity: ";
        switch (pv.kind) {
            case PeriodicityVerdict::Kind::Periodic:
                os << "periodic (preperiod " << pv.preperiod << ", period " << pv.period << ")";
                break;
            case PeriodicityVerdict::Kind::NotPeriodicUpTo:
                os << "not periodic up to " << pv.horizon;
                break;
            default:
                os << "undecided (" << pv.note << ")";
        }
        os << "\nuniform recurrence: ";
        switch (uv.kind) {
            case URVerdict::Kind::UR: os << "UR (" << uv.reason << ")"; break;
            case URVerdict::Kind::NotUR: os << "not UR, witness " << uv.witness; break;
            default: os << "undecided (" << uv.reason << ")";
        }
        if (certified) {
            os << "\nbalance: " << (br.balanced ? "balanced" : "unbalanced");
            if (!br.balanced)
                os << " at length " << br.length << " letter " << br.letter << " ("
                   << br.witness_low << " vs " << br.witness_high << ")";
        } else {
            os << "\nbalance: uncertified";
        }
        os << "\n";
        emit(o, os.str());
    }
    const bool undecided = !certified || pv.kind == PeriodicityVerdict::Kind::Undecided ||
                           uv.kind == URVerdict::Kind::Undecided;
    return undecided ? kExitUndecided : kExitOk;
}

int cmd_graph(const CommonOpts& o) {
    FactorOracle oracle = make_oracle(o);
    const RauzyGraph g = build_rauzy_graph(oracle, o.k0);
    if (o.format == "json") {
        nlohmann::json j;
        j["schema"] = "rauzy.graph/1";
        j["order"] = o.k0;
        j["vertices"] = nlohmann::json::array();
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            j["vertices"].push_back(g.vertex_word(static_cast<int>(v)));
        j["edges"] = nlohmann::json::array();
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            j["edges"].push_back({{"word", g.edge(static_cast<int>(e)).word},
                                  {"tail", g.edge(static_cast<int>(e)).tail},
                                  {"head", g.edge(static_cast<int>(e)).head}});
        j["strongly_connected"] = g.report().strongly_connected;
        j["is_cycle"] = g.report().is_cycle;
        emit(o, j.dump(2));
    } else {
        emit(o, g.to_dot());
    }
    return kExitOk;
}

int cmd_scheme(const CommonOpts& o) {
    FactorOracle oracle = make_oracle(o);
    const std::int64_t clean = find_clean_order(oracle, o.k0);
    if (clean != o.k0)
        std::cerr << "note: k0=" << o.k0 << " is not clean; using k=" << clean << "\n";
    const Scheme s = build_scheme_from_rauzy(oracle, clean);
    const ValidationReport rep = validate_scheme(s, oracle, o.bound_paths, o.bound_factors);
    if (o.format == "dot") {
        emit(o, s.to_dot());
    } else if (o.format == "json") {
        nlohmann::json j;
        j["schema"] = "rauzy.scheme_report/1";
        j["order"] = clean;
        j["scheme"] = nlohmann::json::parse(scheme_to_json(s));
        j["validation"] = nlohmann::json::parse(validation_to_json(rep));
        emit(o, j.dump(2));
    } else {
        std::ostringstream os;
        os << "order: " << clean << "\nvertices: " << s.vertex_count()
           << "\nedges: " << s.edge_count() << "\nscale: " << s.scale() << "\n"
           << rep.summary();
        emit(o, os.str());
    }
    return rep.ok() ? kExitOk : kExitError;
}

int cmd_protocol(const CommonOpts& o) {
    FactorOracle oracle = make_oracle(o);
    Protocol p = run_protocol(oracle, o.k0, o.steps);
    if (!o.dump_dot_dir.empty()) {
        // Re-run the pipeline to dump per-step schemes.
        std::filesystem::create_directories(o.dump_dot_dir);
        FactorOracle oracle2(oracle.source().clone(), o.horizon);
        try {
            const std::int64_t clean = find_clean_order(oracle2, o.k0);
            Scheme s = build_scheme_from_rauzy(oracle2, clean);
            for (std::size_t i = 0; i < p.entries.size(); ++i) {
                std::ofstream f(std::filesystem::path(o.dump_dot_dir) /
                                ("step_" + std::to_string(i) + ".dot"));
                f << s.to_dot();
                s = evolve(s, p.entries[i].support, oracle2).scheme;
            }
        } catch (const Error&) {
            // partial dumps are fine; the JSON carries the abort reason
        }
    }
    emit(o, protocol_to_json(p));
    if (p.abort_reason && p.abort_reason->find("horizon") != std::string::npos)
        return kExitUndecided;
    return p.abort_reason ? kExitError : kExitOk;
}

int cmd_verify(const CommonOpts& o) {
    struct Case {
        std::string name;
        std::unique_ptr<IWordSource> src;
    };
    std::vector<Case> cases;
    cases.push_back({"fibonacci", make_fibonacci_source()});
    cases.push_back({"thue_morse", make_thue_morse_source()});
    cases.push_back({"tribonacci", make_tribonacci_source()});
    {
        std::vector<std::int64_t> ones{1};
        cases.push_back({"sturmian_golden",
                         std::make_unique<SturmianCFSource>(std::make_unique<CycleDigits>(ones))});
    }

    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    std::mt19937_64 rng(o.seed);

    for (auto& c : cases) {
        FactorOracle oracle(c.src->clone(), o.horizon);
        const ComplexityProfile cp = complexity_profile(oracle, 16);
        bool mono = true;
        for (std::size_t i = 0; i + 1 < cp.values.size(); ++i)
            if (cp.values[i + 1] < cp.values[i]) mono = false;
        check(c.name + ": complexity nondecreasing", mono);

        // Oracle vs brute-force factor enumeration on a fixed window.
        const std::string_view buf = oracle.prefix(4096);
        bool agree = true;
        for (int trial = 0; trial < 50 && agree; ++trial) {
            const std::size_t len = 1 + static_cast<std::size_t>(rng() % 12);
            const std::size_t at = static_cast<std::size_t>(rng() % (buf.size() - len));
            const Word u(buf.substr(at, len));
            agree = oracle.membership(u) == Ternary::Yes;
        }
        check(c.name + ": sampled factors are members", agree);

        try {
            const std::int64_t clean = find_clean_order(oracle, 1);
            const Scheme s = build_scheme_from_rauzy(oracle, clean);
            const ValidationReport rep = validate_scheme(s, oracle, 5, 12);
            check(c.name + ": clean-order scheme validates", rep.ok());
            Protocol p1 = run_protocol(oracle, 1, 8);
            FactorOracle oracle2(c.src->clone(), o.horizon);
            Protocol p2 = run_protocol(oracle2, 1, 8);
            check(c.name + ": protocol deterministic",
                  protocol_to_json(p1) == protocol_to_json(p2));
        } catch (const Error& e) {
            std::cout << "[FAIL] " << c.name << ": pipeline error: " << e.what() << "\n";
            ++failures;
        }
    }
    return failures == 0 ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rauzy graphs, Rauzy schemes and deterministic evolution protocols"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* word = app.add_subcommand("word", "dump a prefix of the word");
    add_common(word, o);
    auto* analyze = app.add_subcommand("analyze", "complexity/recurrence profiles and probes");
    add_common(analyze, o);
    auto* graph = app.add_subcommand("graph", "Rauzy graph G_k export");
    add_common(graph, o);
    auto* scheme = app.add_subcommand("scheme", "build and validate the Rauzy scheme");
    add_common(scheme, o);
    auto* protocol = app.add_subcommand("protocol", "run the deterministic evolution protocol");
    add_common(protocol, o);
    protocol->add_option("--dump-dot", o.dump_dot_dir, "directory for per-step DOT dumps");
    auto* verify = app.add_subcommand("verify", "invariant suite over the built-in corpus");
    add_common(verify, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (word->parsed()) return cmd_word(o);
        if (analyze->parsed()) return cmd_analyze(o);
        if (graph->parsed()) return cmd_graph(o);
        if (scheme->parsed()) return cmd_scheme(o);
        if (protocol->parsed()) return cmd_protocol(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const HorizonExceededError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
