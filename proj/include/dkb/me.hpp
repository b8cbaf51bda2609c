#pragma once

#include <cstdint>

#include "dkb/distribution.hpp"
#include "dkb/ranking.hpp"
#include "dkb/zsystem.hpp"

namespace dkb {

// One bound exponent per default; all-ones realizes the single-bounded policy.
using StrengthVector = std::vector<Rat>;

// Weights solving the entropy-maximization fixpoint system. With
//   kappa_z(w) = sum of z_i over the defaults w violates,
//   V_i = min kappa_z over worlds verifying d_i,
//   W_i = min over worlds violating d_i of the same sum without z_i,
// the returned z satisfies feasibility (W_i + z_i >= V_i + t_i) and
// complementary slackness (z_i > 0 implies equality).
struct MEWeights {
    std::vector<Rat> z;
    int iterations = 0;
    bool feasible = false;
};

struct MEOptions {
    int max_iters = 1000;
};

/// Synchronous fixpoint iteration z_i <- max(0, t_i + V_i(z) - W_i(z)) from
/// z = t. Empty t selects the declared per-default strengths. Throws
/// InconsistentDelta, MEDivergence, MEInfeasible.
MEWeights me_weights(const KnowledgeBase& kb, const StrengthVector& t = {},
                     const MEOptions& opts = {});

/// rank(w) = sum of z_i over violated defaults.
RankingFn me_ranking(const KnowledgeBase& kb, const MEWeights& weights);

/// Maximum-entropy entailment under the single-bounded reading: true iff the
/// facts are unsatisfiable or kappa(facts & !query) > kappa(facts & query) in
/// the ME ranking.
bool me_entails(const KnowledgeBase& kb, const Formula& query, const StrengthVector& t = {},
                const MEOptions& opts = {});

enum class MEVerdict { Entailed, NotEntailed, Unknown };

std::string verdict_str(MEVerdict v);

// Sampling plan for the plural-bounded universal quantifier: the all-ones
// vector, each unit-dominant vector (one entry 8, rest 1), and `samples`
// random vectors with entries drawn from [exp_min, exp_max]. Sound for
// refutation; a sampled approximation on the entailed side.
struct PluralSampler {
    int samples = 64;
    std::uint64_t seed = 1;
    Rat exp_min = Rat(1, 4);
    Rat exp_max = Rat(8);
};

/// NotEntailed as soon as any sampled strength vector fails to entail;
/// Entailed when all succeed; Unknown when some sample errors out.
MEVerdict me_entails_plural(const KnowledgeBase& kb, const Formula& query,
                            const PluralSampler& sampler = {}, const MEOptions& opts = {});

/// Leading-order witness of the ME distribution: p(w) = e^rank(w) normalized.
/// Coherent, and satisfies every default of Delta in CLASSICAL mode.
NPDistribution construct_me_distribution(const KnowledgeBase& kb, const MEWeights& weights);

struct NumericMEResult {
    std::vector<double> log_u;      // log base u of each world probability
    std::vector<long> kappa_hat;    // rounded, clamped to [0, sum z + |Delta|]
    std::vector<double> multipliers;  // dual multipliers scaled by 1/ln(1/u)
    int iterations = 0;
};

/// Classical entropy maximization at a fixed small standard value e := u,
/// under the linear constraints P(premise & !conclusion) <= u^t_i * P(premise).
/// Dual coordinate ascent with closed-form updates. Throws SolverFailure when
/// the stationarity gap stays above tol.
NumericMEResult numeric_me_oracle(const KnowledgeBase& kb, const StrengthVector& t = {},
                                  const Rat& u = Rat(1, 1 << 20), double tol = 1e-9,
                                  int max_iters = 20000);

}  // namespace dkb
