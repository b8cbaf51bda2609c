#pragma once

#include "dkb/ranking.hpp"

namespace dkb {

// Result of the greedy toleration rounds over Delta: either an ordered
// partition into groups (group k = the defaults tolerated by the k-th
// residue), or Inconsistent when some nonempty residue tolerates nothing.
struct TolerancePartition {
    bool inconsistent = false;
    std::vector<std::vector<int>> groups;  // default indices, ascending per group
};

TolerancePartition tolerance_partition(const std::vector<Default>& delta,
                                       const Vocabulary& vocab);

/// System Z ranking: z(d) = group index of d; rank(w) = 0 when w violates no
/// default, else 1 + max z over the violated defaults. Throws InconsistentDelta.
RankingFn z_ranking(const std::vector<Default>& delta, const Vocabulary& vocab);

/// Rational closure: entailment in the single minimal Z-ranking.
bool rc_entails(const KnowledgeBase& kb, const Formula& query);

/// Preferential closure via p-entailment: true iff Delta together with
/// fact_formula(kb) ~> !query has no tolerance partition. A default with an
/// unsatisfiable premise is never tolerated, so unsatisfiable facts entail
/// everything.
bool p_entails(const KnowledgeBase& kb, const Formula& query);

/// Brute-force check of ranked-model validity: true iff every ranking with
/// values in {0..cap} that satisfies all of Delta with margin >= 1 verifies
/// kappa(facts & query) < kappa(facts & !query), or the facts are
/// unsatisfiable. cap < 0 selects the default |Delta| + 1. Throws
/// TooLargeForOracle outside the enumeration guard.
bool p_entails_oracle(const KnowledgeBase& kb, const Formula& query, int cap = -1);

/// Lexicographic closure: worlds carry per-group violation counts, compared
/// from the highest group down (fewer violations preferred); true iff every
/// preferred model of the facts satisfies the query.
bool lex_entails(const KnowledgeBase& kb, const Formula& query);

}  // namespace dkb
