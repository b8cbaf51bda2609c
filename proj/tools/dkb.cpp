#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "dkb/bench.hpp"
#include "dkb/entropy.hpp"

using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 usage, 2 parse error, 3 inconsistent defaults,
// 4 solver divergence/infeasibility.
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitSolver = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dkb::Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit_error(const std::string& message, bool as_json) {
    if (as_json) {
        json j;
        j["error"] = message;
        std::cerr << j.dump(2) << '\n';
    } else {
        std::cerr << "error: " << message << '\n';
    }
}

struct Options {
    bool json = false;
    int max_atoms = dkb::kDefaultAtomLimit;
    int max_iters = 1000;
};

int cmd_check(const std::string& path, const Options& opt) {
    dkb::KnowledgeBase kb = dkb::parse_kb(slurp(path), opt.max_atoms);
    dkb::TolerancePartition part = dkb::tolerance_partition(kb.defaults, kb.vocabulary);
    if (opt.json) {
        json j;
        j["atoms"] = json::array();
        for (const dkb::Atom& a : kb.vocabulary.atoms()) j["atoms"].push_back(a.name);
        j["facts"] = kb.facts.size();
        j["defaults"] = kb.defaults.size();
        j["consistent"] = !part.inconsistent;
        j["queries"] = json::array();
        for (const dkb::Formula& q : kb.queries) j["queries"].push_back(dkb::to_string(q));
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << kb.vocabulary.size() << " atoms, " << kb.facts.size() << " facts, "
                  << kb.defaults.size() << " defaults\n";
        std::cout << "defaults " << (part.inconsistent ? "inconsistent" : "consistent") << '\n';
        for (const dkb::Formula& q : kb.queries)
            std::cout << "stored query: " << dkb::to_string(q) << '\n';
    }
    return part.inconsistent ? kExitInconsistent : 0;
}

int cmd_rank(const std::string& path, const std::string& method, const Options& opt) {
    dkb::KnowledgeBase kb = dkb::parse_kb(slurp(path), opt.max_atoms);
    dkb::MEOptions me_opts{opt.max_iters};
    json j;
    std::optional<dkb::RankingFn> R;
    if (method == "z") {
        R = dkb::z_ranking(kb.defaults, kb.vocabulary);
    } else if (method == "me") {
        dkb::MEWeights z = dkb::me_weights(kb, {}, me_opts);
        R = dkb::me_ranking(kb, z);
        json w = json::array();
        for (const dkb::Rat& x : z.z) w.push_back(dkb::rat_str(x));
        j["weights"] = w;
        // leading-order witness distribution, in canonical epsilon syntax
        dkb::NPDistribution P = dkb::construct_me_distribution(kb, z);
        json dist;
        for (std::uint32_t w2 = 0; w2 < P.world_count(); ++w2)
            dist[dkb::world_str(dkb::World{w2}, kb.vocabulary)] = P.at(dkb::World{w2}).str();
        j["distribution"] = dist;
    } else {
        emit_error("unknown ranking method: " + method, opt.json);
        return kExitUsage;
    }
    json table;
    for (std::uint32_t w = 0; w < R->world_count(); ++w)
        table[dkb::world_str(dkb::World{w}, kb.vocabulary)] = R->at(dkb::World{w}).str();
    j["ranking"] = table;
    j["method"] = method;
    if (opt.json) {
        std::cout << j.dump(2) << '\n';
    } else {
        if (j.count("weights")) {
            std::cout << "weights:";
            for (const auto& w : j["weights"]) std::cout << ' ' << w.get<std::string>();
            std::cout << '\n';
        }
        for (std::uint32_t w = 0; w < R->world_count(); ++w)
            std::cout << dkb::world_str(dkb::World{w}, kb.vocabulary) << '\t'
                      << R->at(dkb::World{w}).str() << '\n';
    }
    return 0;
}

int cmd_query(const std::string& path, const std::string& strategy_name,
              const std::string& formula, int samples, std::uint64_t seed, const Options& opt) {
    dkb::KnowledgeBase kb = dkb::parse_kb(slurp(path), opt.max_atoms);
    auto strategy = dkb::strategy_from_name(strategy_name);
    if (!strategy) {
        emit_error("unknown strategy: " + strategy_name, opt.json);
        return kExitUsage;
    }
    dkb::Formula q = dkb::parse_formula(formula, kb.vocabulary);
    dkb::QueryOptions qo;
    qo.me.max_iters = opt.max_iters;
    qo.sampler.samples = samples;
    qo.sampler.seed = seed;
    dkb::QueryResult r = dkb::run_query(kb, *strategy, q, qo);
    if (opt.json) {
        std::cout << dkb::query_result_json(r) << '\n';
    } else {
        std::cout << dkb::strategy_name(r.strategy) << ": " << dkb::verdict_str(r.verdict) << '\n';
        if (!r.weights.empty()) {
            std::cout << "weights:";
            for (const std::string& w : r.weights) std::cout << ' ' << w;
            std::cout << '\n';
        }
        if (!r.trace.empty()) std::cout << r.trace << '\n';
    }
    return 0;
}

int cmd_bench(const std::vector<std::string>& strategy_names, int samples, std::uint64_t seed,
              const Options& opt) {
    std::vector<dkb::Strategy> strategies;
    if (strategy_names.empty()) {
        strategies = dkb::all_strategies();
    } else {
        for (const std::string& name : strategy_names) {
            auto s = dkb::strategy_from_name(name);
            if (!s) {
                emit_error("unknown strategy: " + name, opt.json);
                return kExitUsage;
            }
            strategies.push_back(*s);
        }
    }
    dkb::PluralSampler sampler;
    sampler.samples = samples;
    sampler.seed = seed;
    dkb::BenchReport report = dkb::run_benchmarks(strategies, sampler);
    if (opt.json)
        std::cout << report.to_json() << '\n';
    else
        std::cout << report.table() << report.header << '\n';
    return 0;
}

int cmd_compare(const std::string& path, const std::string& formula, int samples,
                std::uint64_t seed, const Options& opt) {
    dkb::KnowledgeBase kb = dkb::parse_kb(slurp(path), opt.max_atoms);
    dkb::Formula q = dkb::parse_formula(formula, kb.vocabulary);
    dkb::QueryOptions qo;
    qo.me.max_iters = opt.max_iters;
    qo.sampler.samples = samples;
    qo.sampler.seed = seed;
    json all = json::array();
    for (dkb::Strategy s : dkb::all_strategies()) {
        json j;
        j["strategy"] = dkb::strategy_name(s);
        try {
            dkb::QueryResult r = dkb::run_query(kb, s, q, qo);
            j["verdict"] = dkb::verdict_str(r.verdict);
        } catch (const dkb::InconsistentDelta& e) {
            j["error"] = e.what();
        } catch (const dkb::MEDivergence& e) {
            j["error"] = e.what();
        } catch (const dkb::MEInfeasible& e) {
            j["error"] = e.what();
        }
        all.push_back(j);
    }
    if (opt.json) {
        json j;
        j["query"] = dkb::to_string(q);
        j["results"] = all;
        std::cout << j.dump(2) << '\n';
    } else {
        for (const json& j : all)
            std::cout << j.at("strategy").get<std::string>() << ": "
                      << (j.count("verdict") ? j.at("verdict").get<std::string>()
                                             : "error: " + j.at("error").get<std::string>())
                      << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"defeasible inference over infinitesimal probabilities"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json, "machine-readable JSON output");
    app.add_option("--max-atoms", opt.max_atoms, "vocabulary size limit (default 20)");
    app.add_option("--max-iters", opt.max_iters, "weight fixpoint iteration limit");

    std::string file, method = "z", strategy = "me", formula;
    int samples = 64;
    std::uint64_t seed = 1;

    CLI::App* check = app.add_subcommand("check", "parse a .dkb file and report consistency");
    check->add_option("file", file)->required();

    CLI::App* rank = app.add_subcommand("rank", "print the world ranking");
    rank->add_option("file", file)->required();
    rank->add_option("--method", method, "z|me")->check(CLI::IsMember({"z", "me"}));

    CLI::App* query = app.add_subcommand("query", "evaluate a query under one strategy");
    query->add_option("file", file)->required();
    query->add_option("--strategy", strategy, "pc|rc|lc|me|me-plural");
    query->add_option("--samples", samples, "plural-mode sample count");
    query->add_option("--seed", seed, "plural-mode sampler seed");
    query->add_option("formula", formula)->required();

    std::vector<std::string> bench_strategies;
    CLI::App* bench = app.add_subcommand("bench", "run the built-in benchmark suite");
    bench->add_option("--strategies", bench_strategies, "subset of pc rc lc me me-plural");
    bench->add_option("--samples", samples, "plural-mode sample count");
    bench->add_option("--seed", seed, "plural-mode sampler seed");

    CLI::App* compare = app.add_subcommand("compare", "evaluate a query under all strategies");
    compare->add_option("file", file)->required();
    compare->add_option("formula", formula)->required();
    compare->add_option("--samples", samples, "plural-mode sample count");
    compare->add_option("--seed", seed, "plural-mode sampler seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(file, opt);
        if (rank->parsed()) return cmd_rank(file, method, opt);
        if (query->parsed()) return cmd_query(file, strategy, formula, samples, seed, opt);
        if (bench->parsed()) return cmd_bench(bench_strategies, samples, seed, opt);
        if (compare->parsed()) return cmd_compare(file, formula, samples, seed, opt);
    } catch (const dkb::ParseError& e) {
        emit_error(e.what(), opt.json);
        return kExitParse;
    } catch (const dkb::UnknownAtom& e) {
        emit_error(e.what(), opt.json);
        return kExitParse;
    } catch (const dkb::DuplicateAtomDeclaration& e) {
        emit_error(e.what(), opt.json);
        return kExitParse;
    } catch (const dkb::StrengthNotPositive& e) {
        emit_error(e.what(), opt.json);
        return kExitParse;
    } catch (const dkb::InconsistentDelta& e) {
        emit_error(e.what(), opt.json);
        return kExitInconsistent;
    } catch (const dkb::MEDivergence& e) {
        emit_error(e.what(), opt.json);
        return kExitSolver;
    } catch (const dkb::MEInfeasible& e) {
        emit_error(e.what(), opt.json);
        return kExitSolver;
    } catch (const dkb::Error& e) {
        emit_error(e.what(), opt.json);
        return kExitUsage;
    }
    return 0;
}
