#pragma once

#include "dkb/distribution.hpp"

namespace dkb {

// Outcome of comparing H(P) against H(Q) in the ordered field.
// EqualUpToLevel(K) means the expansions agree on every examined level; it is
// an explicit verdict, never to be conflated with equality of all orders.
// Unstable is returned only when the certified numeric fallback cannot decide
// the sign of a level coefficient.
struct EntropyVerdict {
    enum class Kind { Less, Greater, EqualUpToLevel, Unstable };

    Kind kind;
    int level = 0;  // deciding level for Less/Greater, examined depth otherwise

    bool is_less() const { return kind == Kind::Less; }
    bool is_greater() const { return kind == Kind::Greater; }
    bool is_equal_up_to_level() const { return kind == Kind::EqualUpToLevel; }
    bool is_unstable() const { return kind == Kind::Unstable; }

    std::string str() const;
};

/// Decides the sign of H(P) - H(Q) level by level, where both entropies are
/// expanded as formal series in increasing powers of e over the distributions'
/// exponent lattice. Within a level the ln(1/e)-coefficient dominates; the
/// remaining constant part r + sum a_i*ln(b_i) is decided exactly when r = 0
/// (big-rational product comparison) and by certified interval refinement
/// otherwise. Throws VocabularyMismatch.
EntropyVerdict entropy_compare(const NPDistribution& P, const NPDistribution& Q,
                               int max_level = 8);

/// -sum p(w) * log2 p(w) evaluated at e^(1/root) := u, as an exact rational
/// within 2^-error_bits of the true value (certified by directed rounding).
Rat entropy_numeric(const NPDistribution& P, const Rat& u, unsigned long root,
                    int error_bits = 32);

}  // namespace dkb
