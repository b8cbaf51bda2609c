#pragma once

#include <vector>

#include "dkb/distribution.hpp"
#include "dkb/formula.hpp"
#include "dkb/parser.hpp"
#include "dkb/rational.hpp"

namespace dkb {

// A kappa-style ranking: world -> nonnegative rational or infinity, with 0 the
// unsurprising level. The constructor normalizes the minimum finite rank to 0
// and rejects the degenerate all-infinite function.
class RankingFn {
public:
    RankingFn(Vocabulary vocab, std::vector<ExtRat> ranks);

    const Vocabulary& vocabulary() const { return vocab_; }
    std::uint32_t world_count() const { return static_cast<std::uint32_t>(rank_.size()); }
    const ExtRat& at(World w) const { return rank_[w.bits]; }
    const std::vector<ExtRat>& ranks() const { return rank_; }

private:
    Vocabulary vocab_;
    std::vector<ExtRat> rank_;
};

/// kappa(f) = min rank over the models of f; infinity when f is unsatisfiable.
ExtRat kappa(const RankingFn& R, const Formula& f);

/// kappa(target & given) - kappa(given). Throws ConditioningOnImpossible when
/// kappa(given) is infinite.
ExtRat cond_kappa(const RankingFn& R, const Formula& target, const Formula& given);

/// R satisfies the default with the given margin: either
/// kappa(premise & !conclusion) >= kappa(premise & conclusion) + margin, or
/// kappa(premise & !conclusion) is infinite.
bool ranking_satisfies(const RankingFn& R, const Default& d, const Rat& margin);

/// The canonical ranking of a distribution: rank(w) = magnitude(p(w)),
/// shifted so the minimum is 0. Throws DegenerateDistribution if every
/// magnitude is infinite.
RankingFn ranking_from_distribution(const NPDistribution& P);

}  // namespace dkb
