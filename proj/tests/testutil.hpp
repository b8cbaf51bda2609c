#pragma once

#include <random>

#include "dkb/eps.hpp"
#include "dkb/formula.hpp"

namespace dkbtest {

using dkb::EpsPoly;
using dkb::EpsRatio;
using dkb::Rat;

// Rich random values for algebraic-law checks: fractional coefficients,
// half-integer exponents, mixed signs.
inline EpsPoly random_poly(std::mt19937_64& rng, int max_terms = 4) {
    std::uniform_int_distribution<int> n_terms(0, max_terms);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> exp2(0, 8);  // exponent in halves
    EpsPoly p;
    int k = n_terms(rng);
    for (int i = 0; i < k; ++i) {
        Rat c = dkb::frac(num(rng), den(rng));
        if (c == 0) continue;
        p += EpsPoly::term(dkb::frac(exp2(rng), 2), c);
    }
    return p;
}

inline EpsPoly random_nonzero_poly(std::mt19937_64& rng, int max_terms = 4) {
    for (;;) {
        EpsPoly p = random_poly(rng, max_terms);
        if (!p.is_zero()) return p;
    }
}

inline EpsRatio random_ratio(std::mt19937_64& rng) {
    return EpsRatio(random_poly(rng), random_nonzero_poly(rng));
}

// Tame positive values whose symbolic order agrees with evaluation at
// u <= 2^-10: few terms, small integer coefficients, integer exponents. The
// cross-multiplied difference of two such ratios has every coefficient bounded
// by 50 in absolute value over at most nine exponents, so the tail below the
// leading term stays under 450*u < 1 <= |leading coefficient|.
inline EpsPoly random_tame_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_terms(1, 3);
    std::uniform_int_distribution<int> coeff(1, 5);
    std::uniform_int_distribution<int> expo(0, 4);
    EpsPoly p;
    int k = n_terms(rng);
    for (int i = 0; i < k; ++i) p += EpsPoly::term(expo(rng), coeff(rng));
    return p;
}

inline EpsRatio random_tame_ratio(std::mt19937_64& rng) {
    return EpsRatio(random_tame_poly(rng), random_tame_poly(rng));
}

}  // namespace dkbtest
