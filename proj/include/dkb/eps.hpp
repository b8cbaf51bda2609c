#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dkb/errors.hpp"
#include "dkb/rational.hpp"

namespace dkb {

// A finite sum  sum_q c_q * e^q  with nonzero rational coefficients c_q and
// nonnegative rational exponents q, where e is the engine's single formal
// infinitesimal. The term map is canonical: equal values have identical maps;
// zero is the empty map. Since e is a positive infinitesimal, the sign of a
// nonzero polynomial is the sign of the coefficient at the LOWEST exponent.
class EpsPoly {
public:
    using TermMap = std::map<Rat, Rat>;

    EpsPoly() = default;  // zero
    EpsPoly(const Rat& constant);
    EpsPoly(long constant) : EpsPoly(Rat(constant)) {}
    EpsPoly(int constant) : EpsPoly(Rat(constant)) {}

    /// coeff * e^exp. Throws Error on negative exponent.
    static EpsPoly term(const Rat& exp, const Rat& coeff);
    static EpsPoly eps() { return term(1, 1); }

    bool is_zero() const { return terms_.empty(); }
    int sign() const;
    /// Lowest exponent; nullopt for zero.
    std::optional<Rat> order() const;
    const Rat& leading_coeff() const;  // pre: nonzero
    const TermMap& terms() const { return terms_; }
    Rat coeff(const Rat& exp) const;

    EpsPoly& operator+=(const EpsPoly& o);
    EpsPoly& operator-=(const EpsPoly& o);
    friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
    friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
    friend EpsPoly operator-(const EpsPoly& a);

    EpsPoly scaled(const Rat& c) const;
    /// Divides by e^k; every exponent must be >= k.
    EpsPoly shifted_down(const Rat& k) const;

    friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const EpsPoly& a, const EpsPoly& b) { return !(a == b); }

    /// Exact value with e^(1/root) := u. Every exponent's denominator must
    /// divide root (else RootMismatch).
    Rat eval(const Rat& u, unsigned long root) const;

    /// Canonical rendering, e.g. "1 + 2*e^2", "-e^1/2", "0".
    std::string str() const;

private:
    void add_term(const Rat& exp, const Rat& coeff);
    TermMap terms_;
};

/// Sign of a - b.
int compare(const EpsPoly& a, const EpsPoly& b);

class EpsRatio;
/// Sign of a - b, decided by cross-multiplication with positive denominators.
int compare(const EpsRatio& a, const EpsRatio& b);

// A quotient of two EpsPolys. Invariants: the denominator is nonzero with
// positive leading coefficient, and the common e-power is reduced so that
// min(ord(num), ord(den)) = 0; zero is stored as 0/1. No polynomial-GCD
// reduction is performed; equality is decided by cross-multiplication.
class EpsRatio {
public:
    EpsRatio() : num_(), den_(1) {}
    EpsRatio(EpsPoly num, EpsPoly den = EpsPoly(1));
    EpsRatio(const Rat& constant) : EpsRatio(EpsPoly(constant)) {}
    EpsRatio(long constant) : EpsRatio(EpsPoly(constant)) {}
    EpsRatio(int constant) : EpsRatio(EpsPoly(constant)) {}

    /// e^t for t >= 0.
    static EpsRatio eps_power(const Rat& t) { return EpsRatio(EpsPoly::term(t, 1)); }

    const EpsPoly& num() const { return num_; }
    const EpsPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    friend EpsRatio operator+(const EpsRatio& a, const EpsRatio& b);
    friend EpsRatio operator-(const EpsRatio& a, const EpsRatio& b);
    friend EpsRatio operator*(const EpsRatio& a, const EpsRatio& b);
    friend EpsRatio operator/(const EpsRatio& a, const EpsRatio& b);  // Error on b = 0
    friend EpsRatio operator-(const EpsRatio& a);

    /// Value equality (cross-multiplied), not representation equality.
    friend bool operator==(const EpsRatio& a, const EpsRatio& b);
    friend bool operator!=(const EpsRatio& a, const EpsRatio& b) { return !(a == b); }
    friend bool operator<(const EpsRatio& a, const EpsRatio& b) { return compare(a, b) < 0; }
    friend bool operator<=(const EpsRatio& a, const EpsRatio& b) { return compare(a, b) <= 0; }
    friend bool operator>(const EpsRatio& a, const EpsRatio& b) { return compare(a, b) > 0; }
    friend bool operator>=(const EpsRatio& a, const EpsRatio& b) { return compare(a, b) >= 0; }

    /// Order of magnitude: ord(num) - ord(den); infinity for zero. Throws
    /// NegativeOperand on negative values. This is the kappa-polarity
    /// projection from nonarchimedean values to ranks.
    ExtRat magnitude() const;

    /// Exact value with e^(1/root) := u.
    Rat eval(const Rat& u, unsigned long root) const;

    std::string str() const;
    static EpsRatio parse(std::string_view text);

private:
    void normalize();
    EpsPoly num_, den_;
};

/// a << b: a is below r*b for every positive standard real r. Requires
/// a, b >= 0 (NegativeOperand otherwise). Equivalent to a = 0 < b, or
/// a, b > 0 with magnitude(a) > magnitude(b).
bool much_smaller(const EpsRatio& a, const EpsRatio& b);

}  // namespace dkb
