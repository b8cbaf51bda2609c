#pragma once

#include <vector>

#include "dkb/eps.hpp"
#include "dkb/formula.hpp"
#include "dkb/parser.hpp"

namespace dkb {

// How a default constrains the conditional probability of its exception.
struct ConstraintMode {
    enum class Kind {
        Classical,       // P(!conc | prem) << 1
        MuchLessBound,   // P(!conc | prem) << e^t
        StrictBound,     // P(!conc | prem) <  e^t
        WeakBound,       // P(!conc | prem) <= e^t
    };

    Kind kind = Kind::Classical;
    Rat t{1};  // bound exponent; unused for Classical

    static ConstraintMode classical() { return {Kind::Classical, Rat(1)}; }
    static ConstraintMode much_less(Rat t);
    static ConstraintMode strict(Rat t);
    static ConstraintMode weak(Rat t);
};

// What to do when a default's premise has probability zero. The ranking
// reading makes such defaults vacuously satisfied; the distribution-level
// convention is left to the caller.
enum class ZeroPremise { Error, VacuousTrue };

// A world-indexed nonarchimedean probability distribution: entries are
// nonnegative and sum to 1 exactly (symbolically).
class NPDistribution {
public:
    NPDistribution(Vocabulary vocab, std::vector<EpsRatio> p);

    static NPDistribution uniform(const Vocabulary& vocab);

    const Vocabulary& vocabulary() const { return vocab_; }
    std::uint32_t world_count() const { return static_cast<std::uint32_t>(p_.size()); }
    const EpsRatio& at(World w) const { return p_[w.bits]; }
    const std::vector<EpsRatio>& entries() const { return p_; }

private:
    Vocabulary vocab_;
    std::vector<EpsRatio> p_;
};

/// P(f) = sum of p(w) over the models of f.
EpsRatio prob(const NPDistribution& P, const Formula& f);

/// P(target & given) / P(given); ZeroConditioning when P(given) = 0.
EpsRatio cond_prob(const NPDistribution& P, const Formula& target, const Formula& given);

/// Checks P(!conclusion | premise) against the mode's bound.
bool satisfies_default(const NPDistribution& P, const Default& d, ConstraintMode mode,
                       ZeroPremise zero_premise = ZeroPremise::Error);

/// True iff no world has probability zero.
bool is_coherent(const NPDistribution& P);

}  // namespace dkb
