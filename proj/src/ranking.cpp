#include "dkb/ranking.hpp"

namespace dkb {

RankingFn::RankingFn(Vocabulary vocab, std::vector<ExtRat> ranks)
    : vocab_(std::move(vocab)), rank_(std::move(ranks)) {
    if (rank_.size() != vocab_.world_count(kHardAtomLimit))
        throw Error("ranking has " + std::to_string(rank_.size()) + " entries for " +
                    std::to_string(vocab_.world_count(kHardAtomLimit)) + " worlds");
    ExtRat lo = ExtRat::infinity();
    for (const ExtRat& r : rank_) {
        if (!r.is_infinite() && r.value() < 0) throw Error("negative rank");
        lo = min(lo, r);
    }
    if (lo.is_infinite()) throw DegenerateDistribution();
    if (!(lo == ExtRat(0)))
        for (ExtRat& r : rank_) r = r - lo.value();
}

ExtRat kappa(const RankingFn& R, const Formula& f) {
    WorldSet s = model_set(f, R.vocabulary(), kHardAtomLimit);
    ExtRat lo = ExtRat::infinity();
    s.for_each([&](std::uint32_t i) { lo = min(lo, R.at(World{i})); });
    return lo;
}

ExtRat cond_kappa(const RankingFn& R, const Formula& target, const Formula& given) {
    ExtRat kg = kappa(R, given);
    if (kg.is_infinite()) throw ConditioningOnImpossible();
    return kappa(R, target & given) - kg.value();
}

bool ranking_satisfies(const RankingFn& R, const Default& d, const Rat& margin) {
    ExtRat viol = kappa(R, d.premise & !d.conclusion);
    if (viol.is_infinite()) return true;
    ExtRat verif = kappa(R, d.premise & d.conclusion);
    return viol >= verif + ExtRat(margin);
}

RankingFn ranking_from_distribution(const NPDistribution& P) {
    std::vector<ExtRat> ranks;
    ranks.reserve(P.world_count());
    bool any_finite = false;
    for (const EpsRatio& x : P.entries()) {
        ExtRat m = x.magnitude();
        any_finite = any_finite || !m.is_infinite();
        ranks.push_back(std::move(m));
    }
    if (!any_finite) throw DegenerateDistribution();
    return RankingFn(P.vocabulary(), std::move(ranks));
}

}  // namespace dkb
