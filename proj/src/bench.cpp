#include "dkb/bench.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace dkb {

using nlohmann::json;

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::PC: return "pc";
        case Strategy::RC: return "rc";
        case Strategy::LC: return "lc";
        case Strategy::ME: return "me";
        case Strategy::MEPlural: return "me-plural";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    if (name == "pc") return Strategy::PC;
    if (name == "rc") return Strategy::RC;
    if (name == "lc") return Strategy::LC;
    if (name == "me") return Strategy::ME;
    if (name == "me-plural") return Strategy::MEPlural;
    return std::nullopt;
}

std::vector<Strategy> all_strategies() {
    return {Strategy::PC, Strategy::RC, Strategy::LC, Strategy::ME, Strategy::MEPlural};
}

namespace {

std::map<std::string, std::string> ranking_table(const RankingFn& R) {
    std::map<std::string, std::string> out;
    for (std::uint32_t w = 0; w < R.world_count(); ++w)
        out[world_str(World{w}, R.vocabulary())] = R.at(World{w}).str();
    return out;
}

std::string partition_trace(const TolerancePartition& part,
                            const std::vector<Default>& delta) {
    std::ostringstream os;
    if (part.inconsistent) {
        os << "inconsistent";
        return os.str();
    }
    for (std::size_t g = 0; g < part.groups.size(); ++g) {
        os << "group " << g << ":";
        for (int i : part.groups[g])
            os << " (" << to_string(delta[static_cast<std::size_t>(i)].premise) << " ~> "
               << to_string(delta[static_cast<std::size_t>(i)].conclusion) << ")";
        if (g + 1 < part.groups.size()) os << "; ";
    }
    return os.str();
}

}  // namespace

QueryResult run_query(const KnowledgeBase& kb, Strategy strategy, const Formula& query,
                      const QueryOptions& opts) {
    QueryResult r;
    r.strategy = strategy;
    switch (strategy) {
        case Strategy::PC: {
            std::vector<Default> extended = kb.defaults;
            extended.push_back(Default{fact_formula(kb), !query, Rat(1)});
            bool verdict = p_entails(kb, query);
            r.verdict = verdict ? MEVerdict::Entailed : MEVerdict::NotEntailed;
            r.trace = "toleration of (facts ~> !query) added to the defaults: " +
                      partition_trace(tolerance_partition(extended, kb.vocabulary), extended);
            break;
        }
        case Strategy::RC: {
            bool verdict = rc_entails(kb, query);
            r.verdict = verdict ? MEVerdict::Entailed : MEVerdict::NotEntailed;
            r.ranking = ranking_table(z_ranking(kb.defaults, kb.vocabulary));
            r.trace = "z-partition: " +
                      partition_trace(tolerance_partition(kb.defaults, kb.vocabulary), kb.defaults);
            break;
        }
        case Strategy::LC: {
            bool verdict = lex_entails(kb, query);
            r.verdict = verdict ? MEVerdict::Entailed : MEVerdict::NotEntailed;
            r.ranking = ranking_table(z_ranking(kb.defaults, kb.vocabulary));
            r.trace = "z-partition: " +
                      partition_trace(tolerance_partition(kb.defaults, kb.vocabulary), kb.defaults);
            break;
        }
        case Strategy::ME: {
            MEWeights z = me_weights(kb, {}, opts.me);
            RankingFn R = me_ranking(kb, z);
            Formula facts = fact_formula(kb);
            bool verdict = kappa(R, facts).is_infinite() ||
                           kappa(R, facts & !query) > kappa(R, facts & query);
            r.verdict = verdict ? MEVerdict::Entailed : MEVerdict::NotEntailed;
            for (const Rat& w : z.z) r.weights.push_back(rat_str(w));
            r.ranking = ranking_table(R);
            r.trace = "weight fixpoint reached after " + std::to_string(z.iterations) +
                      " iterations";
            break;
        }
        case Strategy::MEPlural: {
            r.verdict = me_entails_plural(kb, query, opts.sampler, opts.me);
            r.seed = opts.sampler.seed;
            r.trace = "sampled strength vectors: all-ones, unit-dominant, " +
                      std::to_string(opts.sampler.samples) + " random";
            break;
        }
    }
    return r;
}

std::string query_result_json(const QueryResult& r, bool pretty) {
    json j;
    j["verdict"] = verdict_str(r.verdict);
    j["strategy"] = strategy_name(r.strategy);
    if (!r.weights.empty()) j["weights"] = r.weights;
    if (!r.ranking.empty()) j["ranking"] = r.ranking;
    if (!r.trace.empty()) j["trace"] = r.trace;
    if (r.seed) j["seed"] = *r.seed;
    return pretty ? j.dump(2) : j.dump();
}

const std::vector<BenchInstance>& builtin_benchmarks() {
    static const std::vector<BenchInstance> instances = [] {
        std::vector<BenchInstance> out;
        auto add = [&](const std::string& name, const char* dkb,
                       std::vector<std::pair<const char*, bool>> checks) {
            BenchInstance inst;
            inst.name = name;
            inst.kb = parse_kb(dkb);
            for (auto& [q, must] : checks)
                inst.checks.push_back(BenchCheck{parse_formula(q, inst.kb.vocabulary), must});
            out.push_back(std::move(inst));
        };
        add("ES",
            "atoms phi alpha beta psi\n"
            "fact phi\n"
            "default phi ~> alpha\n"
            "default alpha ~> beta\n"
            "default beta ~> psi\n"
            "default alpha ~> !psi\n",
            {{"!psi", true}});
        add("EI",
            "atoms alpha beta psi phi\n"
            "fact alpha\n"
            "default alpha ~> beta\n"
            "default alpha ~> !psi\n"
            "default beta ~> psi\n"
            "default beta ~> phi\n",
            {{"phi", true}});
        add("GE",
            "atoms alpha beta gamma psi\n"
            "fact alpha & beta & gamma\n"
            "default alpha ~> !psi\n"
            "default gamma ~> !psi\n"
            "default alpha & beta ~> psi\n",
            {{"psi", false}, {"!psi", false}});
        add("AP",
            "atoms alpha beta gamma\n"
            "fact alpha | (beta & gamma)\n"
            "default true ~> !beta\n"
            "default true ~> !gamma\n"
            "default alpha | beta ~> !alpha\n",
            {{"!alpha", false}});
        add("RE",
            "atoms phi psi\n"
            "fact !phi\n"
            "default true ~> phi\n"
            "default true ~> phi | psi\n",
            {{"psi", false}});
        add("NE",
            "atoms phi psi\n"
            "fact !phi\n"
            "default true ~> phi\n"
            "default true ~> psi\n"
            "default !phi | !psi ~> !phi\n",
            {{"psi", false}});
        return out;
    }();
    return instances;
}

namespace {

MEVerdict check_one(const KnowledgeBase& kb, Strategy s, const Formula& q,
                    const PluralSampler& sampler) {
    switch (s) {
        case Strategy::PC:
            return p_entails(kb, q) ? MEVerdict::Entailed : MEVerdict::NotEntailed;
        case Strategy::RC:
            return rc_entails(kb, q) ? MEVerdict::Entailed : MEVerdict::NotEntailed;
        case Strategy::LC:
            return lex_entails(kb, q) ? MEVerdict::Entailed : MEVerdict::NotEntailed;
        case Strategy::ME:
            return me_entails(kb, q) ? MEVerdict::Entailed : MEVerdict::NotEntailed;
        case Strategy::MEPlural:
            return me_entails_plural(kb, q, sampler);
    }
    return MEVerdict::Unknown;
}

}  // namespace

BenchReport run_benchmarks(const std::vector<Strategy>& strategies,
                           const PluralSampler& sampler) {
    auto start = std::chrono::steady_clock::now();
    BenchReport report;
    report.header =
        "GE, AP, RE and NE are encoded as must-not-infer checks (GE checks both psi and "
        "!psi), following the prose reading of the pattern statements; the (pc, ES) cell "
        "is reported next to the ranked-model oracle verdict and flagged, not asserted.";
    report.seed = sampler.seed;
    report.samples = sampler.samples;

    for (Strategy s : strategies) report.strategies.push_back(strategy_name(s));
    for (const BenchInstance& inst : builtin_benchmarks()) report.instances.push_back(inst.name);

    for (Strategy s : strategies) {
        for (const BenchInstance& inst : builtin_benchmarks()) {
            bool any_unknown = false;
            bool all_pass = true;
            for (const BenchCheck& c : inst.checks) {
                MEVerdict v = check_one(inst.kb, s, c.query, sampler);
                if (v == MEVerdict::Unknown) {
                    any_unknown = true;
                } else {
                    bool pass = (v == MEVerdict::Entailed) == c.must_infer;
                    all_pass = all_pass && pass;
                }
            }
            std::string value = !all_pass ? "0" : (any_unknown ? "unknown" : "1");
            report.cells[strategy_name(s)][inst.name] = value;

            if (s == Strategy::PC && inst.name == "ES") {
                bool oracle_all = true;
                for (const BenchCheck& c : inst.checks) {
                    bool ov = p_entails_oracle(inst.kb, c.query);
                    oracle_all = oracle_all && (ov == c.must_infer);
                }
                report.flagged.push_back(FlaggedCell{
                    strategy_name(s), inst.name, value, oracle_all ? "1" : "0",
                    "p-entailment and the exhaustive admissible-ranking oracle are both "
                    "reported; neither is asserted for this cell"});
            }
        }
    }
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return report;
}

std::string BenchReport::to_json(bool pretty) const {
    json j;
    j["header"] = header;
    j["seed"] = seed;
    j["samples"] = samples;
    j["strategies"] = strategies;
    j["instances"] = instances;
    j["cells"] = cells;
    json fl = json::array();
    for (const FlaggedCell& f : flagged)
        fl.push_back({{"strategy", f.strategy},
                      {"instance", f.instance},
                      {"value", f.value},
                      {"oracle", f.oracle},
                      {"note", f.note}});
    j["flaggedCells"] = fl;
    j["timingMs"] = timing_ms;
    return pretty ? j.dump(2) : j.dump();
}

BenchReport BenchReport::from_json(const std::string& text) {
    json j = json::parse(text);
    BenchReport r;
    r.header = j.at("header").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<int>();
    r.strategies = j.at("strategies").get<std::vector<std::string>>();
    r.instances = j.at("instances").get<std::vector<std::string>>();
    r.cells = j.at("cells").get<std::map<std::string, std::map<std::string, std::string>>>();
    for (const json& f : j.at("flaggedCells"))
        r.flagged.push_back(FlaggedCell{f.at("strategy").get<std::string>(),
                                        f.at("instance").get<std::string>(),
                                        f.at("value").get<std::string>(),
                                        f.at("oracle").get<std::string>(),
                                        f.at("note").get<std::string>()});
    r.timing_ms = j.at("timingMs").get<std::int64_t>();
    return r;
}

std::string BenchReport::table() const {
    std::ostringstream os;
    os << "strategy";
    for (const std::string& inst : instances) os << '\t' << inst;
    os << '\n';
    for (const std::string& s : strategies) {
        os << s;
        for (const std::string& inst : instances) {
            auto row = cells.find(s);
            std::string v = row != cells.end() && row->second.count(inst)
                                ? row->second.at(inst)
                                : "-";
            for (const FlaggedCell& f : flagged)
                if (f.strategy == s && f.instance == inst) v += "*(oracle " + f.oracle + ")";
            os << '\t' << v;
        }
        os << '\n';
    }
    for (const FlaggedCell& f : flagged)
        os << "* " << f.strategy << "/" << f.instance << ": " << f.note << '\n';
    return os.str();
}

// ---- random knowledge bases and the KLM/rationality checker ---------------

Formula sample_formula(std::mt19937_64& rng, const Vocabulary& vocab, int depth) {
    auto literal = [&]() {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(vocab.size()) - 1);
        Formula v = Formula::var(vocab.name(pick(rng)));
        return (rng() & 1) ? v : !v;
    };
    if (depth <= 0) return literal();
    switch (rng() % 6) {
        case 0: return literal();
        case 1: return literal();
        case 2: return sample_formula(rng, vocab, depth - 1) & sample_formula(rng, vocab, depth - 1);
        case 3: return sample_formula(rng, vocab, depth - 1) | sample_formula(rng, vocab, depth - 1);
        case 4: return !sample_formula(rng, vocab, depth - 1);
        default: return literal();
    }
}

KnowledgeBase sample_kb(std::mt19937_64& rng, int max_atoms, int max_defaults) {
    static const char* names[] = {"a", "b", "c", "d", "e_", "f"};
    for (;;) {
        KnowledgeBase kb;
        int n_atoms = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_atoms - 1));
        for (int i = 0; i < n_atoms; ++i) kb.vocabulary.add(names[i]);
        int n_defaults = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_defaults));
        for (int i = 0; i < n_defaults; ++i) {
            // premises lean on literals and small conjunctions, which is where
            // specificity structure (and rational-monotony failures) lives
            Formula prem;
            switch (rng() % 8) {
                case 0: prem = Formula::top(); break;
                case 1:
                case 2:
                    prem = sample_formula(rng, kb.vocabulary, 0) &
                           sample_formula(rng, kb.vocabulary, 0);
                    break;
                default: prem = sample_formula(rng, kb.vocabulary, 0); break;
            }
            Formula conc = (rng() % 4 == 0) ? sample_formula(rng, kb.vocabulary, 1)
                                            : sample_formula(rng, kb.vocabulary, 0);
            kb.defaults.push_back(Default{std::move(prem), std::move(conc), Rat(1)});
        }
        if (!tolerance_partition(kb.defaults, kb.vocabulary).inconsistent) return kb;
    }
}

int MetaReport::violations(const std::string& rule) const {
    for (const RuleStats& r : rules)
        if (r.rule == rule) return r.violations;
    return -1;
}

std::string MetaReport::to_json(bool pretty) const {
    json j;
    j["strategy"] = strategy_name(strategy);
    j["trials"] = trials;
    j["seed"] = seed;
    j["skipped"] = skipped;
    json rl = json::array();
    for (const RuleStats& r : rules)
        rl.push_back({{"rule", r.rule}, {"checked", r.checked}, {"violations", r.violations}});
    j["rules"] = rl;
    j["counterexamples"] = counterexamples;
    return pretty ? j.dump(2) : j.dump();
}

std::string MetaReport::text() const {
    std::ostringstream os;
    os << "strategy " << strategy_name(strategy) << ", " << trials << " trials, seed " << seed
       << ", skipped " << skipped << "\n";
    for (const RuleStats& r : rules)
        os << "  " << r.rule << ": " << r.violations << " violations / " << r.checked
           << " checked\n";
    for (const std::string& c : counterexamples) os << c << '\n';
    return os.str();
}

MetaReport check_meta_properties(Strategy strategy, int trials, std::uint64_t seed) {
    MetaReport report;
    report.strategy = strategy;
    report.trials = trials;
    report.seed = seed;

    const char* rule_names[] = {"Reflexivity", "LeftLogicalEquivalence", "RightWeakening",
                                "And",         "Or",                     "CautiousMonotony",
                                "Cut",         "RationalMonotony"};
    for (const char* r : rule_names) report.rules.push_back(RuleStats{r, 0, 0});
    auto stats = [&](const std::string& name) -> RuleStats& {
        for (RuleStats& r : report.rules)
            if (r.rule == name) return r;
        throw Error("unknown rule " + name);
    };

    std::mt19937_64 rng(seed);
    PluralSampler plural;
    plural.samples = 8;  // keep the plural strategy affordable here

    for (int trial = 0; trial < trials; ++trial) {
        KnowledgeBase kb = sample_kb(rng);

        // the factual consequence relation for fixed Delta; rankings cached
        std::function<bool(const Formula&, const Formula&)> entails;
        std::optional<RankingFn> cached;
        try {
            switch (strategy) {
                case Strategy::PC:
                    entails = [&kb](const Formula& sigma, const Formula& q) {
                        KnowledgeBase k2 = kb;
                        k2.facts = {sigma};
                        return p_entails(k2, q);
                    };
                    break;
                case Strategy::RC:
                    cached = z_ranking(kb.defaults, kb.vocabulary);
                    break;
                case Strategy::ME:
                    cached = me_ranking(kb, me_weights(kb));
                    break;
                case Strategy::LC:
                    entails = [&kb](const Formula& sigma, const Formula& q) {
                        KnowledgeBase k2 = kb;
                        k2.facts = {sigma};
                        return lex_entails(k2, q);
                    };
                    break;
                case Strategy::MEPlural:
                    entails = [&kb, &plural](const Formula& sigma, const Formula& q) {
                        KnowledgeBase k2 = kb;
                        k2.facts = {sigma};
                        return me_entails_plural(k2, q, plural) == MEVerdict::Entailed;
                    };
                    break;
            }
        } catch (const Error&) {
            ++report.skipped;
            continue;
        }
        if (cached) {
            const RankingFn& R = *cached;
            entails = [&R](const Formula& sigma, const Formula& q) {
                if (kappa(R, sigma).is_infinite()) return true;
                return kappa(R, sigma & q) < kappa(R, sigma & !q);
            };
        }

        auto record = [&](const std::string& rule, const Formula& sigma, const Formula& extra,
                          const Formula& q) {
            std::ostringstream os;
            os << "counterexample to " << rule << " (sigma = " << to_string(sigma)
               << ", aux = " << to_string(extra) << ", query = " << to_string(q) << ")\n"
               << to_dkb(kb);
            report.counterexamples.push_back(os.str());
        };

        for (int inst = 0; inst < 3; ++inst) {
            Formula sigma = sample_formula(rng, kb.vocabulary, 2);
            Formula a = sample_formula(rng, kb.vocabulary, 1);
            Formula q1 = sample_formula(rng, kb.vocabulary, 1);
            Formula q2 = sample_formula(rng, kb.vocabulary, 1);

            {
                RuleStats& r = stats("Reflexivity");
                ++r.checked;
                if (!entails(sigma, sigma)) {
                    ++r.violations;
                    record(r.rule, sigma, sigma, sigma);
                }
            }
            {
                // syntactic variants preserve the model set
                Formula sigma2;
                switch (rng() % 3) {
                    case 0: sigma2 = !!sigma; break;
                    case 1: sigma2 = sigma & sigma; break;
                    default: sigma2 = sigma | (sigma & a); break;
                }
                RuleStats& r = stats("LeftLogicalEquivalence");
                if (equivalent(sigma, sigma2, kb.vocabulary)) {
                    ++r.checked;
                    if (entails(sigma, q1) != entails(sigma2, q1)) {
                        ++r.violations;
                        record(r.rule, sigma, sigma2, q1);
                    }
                }
            }
            {
                RuleStats& r = stats("RightWeakening");
                if (entails(sigma, q1)) {
                    ++r.checked;
                    if (!entails(sigma, q1 | q2)) {
                        ++r.violations;
                        record(r.rule, sigma, q1, q1 | q2);
                    }
                }
            }
            {
                RuleStats& r = stats("And");
                if (entails(sigma, q1) && entails(sigma, q2)) {
                    ++r.checked;
                    if (!entails(sigma, q1 & q2)) {
                        ++r.violations;
                        record(r.rule, sigma, q1, q2);
                    }
                }
            }
            {
                RuleStats& r = stats("Or");
                if (entails(sigma, q1) && entails(a, q1)) {
                    ++r.checked;
                    if (!entails(sigma | a, q1)) {
                        ++r.violations;
                        record(r.rule, sigma, a, q1);
                    }
                }
            }
            {
                RuleStats& r = stats("CautiousMonotony");
                if (entails(sigma, a) && entails(sigma, q1)) {
                    ++r.checked;
                    if (!entails(sigma & a, q1)) {
                        ++r.violations;
                        record(r.rule, sigma, a, q1);
                    }
                }
            }
            {
                RuleStats& r = stats("Cut");
                if (entails(sigma, a) && entails(sigma & a, q1)) {
                    ++r.checked;
                    if (!entails(sigma, q1)) {
                        ++r.violations;
                        record(r.rule, sigma, a, q1);
                    }
                }
            }
            {
                RuleStats& r = stats("RationalMonotony");
                if (entails(sigma, q1) && !entails(sigma, !a)) {
                    ++r.checked;
                    if (!entails(sigma & a, q1)) {
                        ++r.violations;
                        record(r.rule, sigma, a, q1);
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace dkb
