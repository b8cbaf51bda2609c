#include "dkb/distribution.hpp"

namespace dkb {

ConstraintMode ConstraintMode::much_less(Rat t) {
    if (t <= 0) throw Error("bound exponent must be positive");
    return {Kind::MuchLessBound, std::move(t)};
}

ConstraintMode ConstraintMode::strict(Rat t) {
    if (t <= 0) throw Error("bound exponent must be positive");
    return {Kind::StrictBound, std::move(t)};
}

ConstraintMode ConstraintMode::weak(Rat t) {
    if (t <= 0) throw Error("bound exponent must be positive");
    return {Kind::WeakBound, std::move(t)};
}

NPDistribution::NPDistribution(Vocabulary vocab, std::vector<EpsRatio> p)
    : vocab_(std::move(vocab)), p_(std::move(p)) {
    if (p_.size() != vocab_.world_count(kHardAtomLimit))
        throw Error("distribution has " + std::to_string(p_.size()) + " entries for " +
                    std::to_string(vocab_.world_count(kHardAtomLimit)) + " worlds");
    EpsRatio total;
    for (const EpsRatio& x : p_) {
        if (x.sign() < 0) throw Error("negative probability entry");
        total = total + x;
    }
    if (total != EpsRatio(1)) throw Error("probabilities sum to " + total.str() + ", not 1");
}

NPDistribution NPDistribution::uniform(const Vocabulary& vocab) {
    std::uint32_t n = vocab.world_count(kHardAtomLimit);
    std::vector<EpsRatio> p(n, EpsRatio(EpsPoly(1), EpsPoly(static_cast<long>(n))));
    return NPDistribution(vocab, std::move(p));
}

EpsRatio prob(const NPDistribution& P, const Formula& f) {
    WorldSet s = model_set(f, P.vocabulary(), kHardAtomLimit);
    EpsRatio total;
    s.for_each([&](std::uint32_t i) { total = total + P.at(World{i}); });
    return total;
}

EpsRatio cond_prob(const NPDistribution& P, const Formula& target, const Formula& given) {
    EpsRatio pg = prob(P, given);
    if (pg.is_zero()) throw ZeroConditioning();
    return prob(P, target & given) / pg;
}

bool satisfies_default(const NPDistribution& P, const Default& d, ConstraintMode mode,
                       ZeroPremise zero_premise) {
    EpsRatio q;
    try {
        q = cond_prob(P, !d.conclusion, d.premise);
    } catch (const ZeroConditioning&) {
        if (zero_premise == ZeroPremise::VacuousTrue) return true;
        throw;
    }
    switch (mode.kind) {
        case ConstraintMode::Kind::Classical:
            return much_smaller(q, EpsRatio(1));
        case ConstraintMode::Kind::MuchLessBound:
            return much_smaller(q, EpsRatio::eps_power(mode.t));
        case ConstraintMode::Kind::StrictBound:
            return q < EpsRatio::eps_power(mode.t);
        case ConstraintMode::Kind::WeakBound:
            return q <= EpsRatio::eps_power(mode.t);
    }
    return false;  // unreachable
}

bool is_coherent(const NPDistribution& P) {
    for (const EpsRatio& x : P.entries())
        if (x.is_zero()) return false;
    return true;
}

}  // namespace dkb
