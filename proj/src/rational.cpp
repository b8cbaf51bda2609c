#include "dkb/rational.hpp"

#include <stdexcept>

namespace dkb {

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

Rat rat_pow(const Rat& base, long exp) {
    if (exp == 0) return Rat(1);
    bool invert = exp < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    if (invert && base == 0) throw std::domain_error("0 raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rat r = invert ? Rat(den, num) : Rat(num, den);
    r.canonicalize();
    return r;
}

bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

}  // namespace dkb
