#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dkb/me.hpp"

namespace dkb {

enum class Strategy { PC, RC, LC, ME, MEPlural };

std::string strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);
std::vector<Strategy> all_strategies();

struct QueryOptions {
    PluralSampler sampler;
    MEOptions me;
};

// Verdict plus whatever trace the strategy produces: the ranking table for
// rc/lc/me, weights for me, the toleration rounds for pc.
struct QueryResult {
    Strategy strategy;
    MEVerdict verdict = MEVerdict::Unknown;
    std::vector<std::string> weights;                 // me only, "p/q" strings
    std::map<std::string, std::string> ranking;       // worldBits -> rank
    std::string trace;
    std::optional<std::uint64_t> seed;                // me-plural only
};

QueryResult run_query(const KnowledgeBase& kb, Strategy strategy, const Formula& query,
                      const QueryOptions& opts = {});

std::string query_result_json(const QueryResult& r, bool pretty = true);

struct BenchCheck {
    Formula query;
    bool must_infer = true;
};

struct BenchInstance {
    std::string name;
    KnowledgeBase kb;
    std::vector<BenchCheck> checks;
};

/// The six built-in inference patterns: ES, EI, GE, AP, RE, NE.
const std::vector<BenchInstance>& builtin_benchmarks();

struct FlaggedCell {
    std::string strategy;
    std::string instance;
    std::string value;   // cell value actually reported
    std::string oracle;  // ranked-model oracle verdict
    std::string note;

    friend bool operator==(const FlaggedCell&, const FlaggedCell&) = default;
};

struct BenchReport {
    std::string header;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<std::string> strategies;
    std::vector<std::string> instances;
    // strategy -> instance -> "1" / "0" / "unknown"
    std::map<std::string, std::map<std::string, std::string>> cells;
    std::vector<FlaggedCell> flagged;
    std::int64_t timing_ms = 0;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;

    std::string to_json(bool pretty = true) const;
    static BenchReport from_json(const std::string& text);
    std::string table() const;  // plain-text rendering
};

BenchReport run_benchmarks(const std::vector<Strategy>& strategies,
                           const PluralSampler& sampler = {});

struct RuleStats {
    std::string rule;
    int checked = 0;
    int violations = 0;
};

struct MetaReport {
    Strategy strategy;
    int trials = 0;
    std::uint64_t seed = 0;
    int skipped = 0;  // sampled KBs the strategy could not evaluate
    std::vector<RuleStats> rules;
    std::vector<std::string> counterexamples;  // rule + formulas + KB, verbatim

    int violations(const std::string& rule) const;
    std::string to_json(bool pretty = true) const;
    std::string text() const;
};

/// Samples random consistent knowledge bases (<= 4 atoms, <= 4 defaults) and
/// checks the KLM rules plus Rational Monotony on the strategy's factual
/// consequence relation.
MetaReport check_meta_properties(Strategy strategy, int trials, std::uint64_t seed);

/// The random KB sampler used by check_meta_properties, exposed for tests.
KnowledgeBase sample_kb(std::mt19937_64& rng, int max_atoms = 4, int max_defaults = 4);

/// Random formula over the sampler's depth-<=2 grammar.
Formula sample_formula(std::mt19937_64& rng, const Vocabulary& vocab, int depth = 2);

}  // namespace dkb
