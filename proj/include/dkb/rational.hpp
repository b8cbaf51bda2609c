#pragma once

#include <gmpxx.h>

#include <cassert>
#include <string>
#include <utility>

namespace dkb {

// Exact rational numbers. GMP keeps values canonical (reduced, positive denominator).
using Rat = mpq_class;

/// Canonical rendering: "p/q" for non-integers, "p" otherwise. Never a float.
std::string rat_str(const Rat& r);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rat rat_parse(const std::string& text);

/// base^exp for integer exp (negative allowed when base != 0).
Rat rat_pow(const Rat& base, long exp);

bool rat_is_integer(const Rat& r);

/// Least common multiple of two positive integers.
mpz_class lcm(const mpz_class& a, const mpz_class& b);

/// num/den in canonical form. The two-argument mpq_class constructor does NOT
/// canonicalize; use this instead whenever num and den may share a factor.
inline Rat frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// A rational extended with +infinity. Used for ranks (kappa values) and
// orders of magnitude, where infinity stands for the impossible event.
class ExtRat {
public:
    ExtRat() : inf_(false), v_(0) {}
    ExtRat(Rat v) : inf_(false), v_(std::move(v)) {}
    ExtRat(long v) : inf_(false), v_(v) {}
    ExtRat(int v) : inf_(false), v_(v) {}

    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }

    const Rat& value() const {
        assert(!inf_);
        return v_;
    }

    std::string str() const { return inf_ ? "inf" : rat_str(v_); }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
    friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

    // Addition absorbs infinity.
    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRat(a.v_ + b.v_);
    }

    // Subtraction of a finite value; infinity stays infinity.
    friend ExtRat operator-(const ExtRat& a, const Rat& b) {
        if (a.inf_) return infinity();
        return ExtRat(a.v_ - b);
    }

private:
    bool inf_;
    Rat v_;
};

inline const ExtRat& min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
inline const ExtRat& max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace dkb
