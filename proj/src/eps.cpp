#include "dkb/eps.hpp"

#include <cctype>
#include <sstream>

namespace dkb {

EpsPoly::EpsPoly(const Rat& constant) {
    if (constant != 0) terms_.emplace(Rat(0), constant);
}

EpsPoly EpsPoly::term(const Rat& exp, const Rat& coeff) {
    if (exp < 0) throw Error("negative epsilon exponent: " + rat_str(exp));
    EpsPoly p;
    if (coeff != 0) p.terms_.emplace(exp, coeff);
    return p;
}

int EpsPoly::sign() const {
    if (terms_.empty()) return 0;
    return sgn(terms_.begin()->second);
}

std::optional<Rat> EpsPoly::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

const Rat& EpsPoly::leading_coeff() const { return terms_.begin()->second; }

Rat EpsPoly::coeff(const Rat& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

void EpsPoly::add_term(const Rat& exp, const Rat& coeff) {
    auto [it, inserted] = terms_.try_emplace(exp, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    EpsPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

EpsPoly operator-(const EpsPoly& a) {
    EpsPoly out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
}

EpsPoly EpsPoly::scaled(const Rat& c) const {
    EpsPoly out;
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms_) out.terms_.emplace(e, coeff * c);
    return out;
}

EpsPoly EpsPoly::shifted_down(const Rat& k) const {
    if (k == 0) return *this;
    EpsPoly out;
    for (const auto& [e, c] : terms_) {
        Rat ne = e - k;
        if (ne < 0) throw Error("shift below exponent zero");
        out.terms_.emplace(ne, c);
    }
    return out;
}

Rat EpsPoly::eval(const Rat& u, unsigned long root) const {
    Rat out(0);
    for (const auto& [e, c] : terms_) {
        // exponent e = p/q with q | root: e^e = u^(root*e), an integer power
        Rat scaled_exp = e * static_cast<long>(root);
        if (!rat_is_integer(scaled_exp))
            throw RootMismatch("exponent " + rat_str(e) + " vs root " + std::to_string(root));
        if (!scaled_exp.get_num().fits_slong_p())
            throw Error("exponent too large for evaluation");
        out += c * rat_pow(u, scaled_exp.get_num().get_si());
    }
    return out;
}

std::string EpsPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat abs_c = abs(c);
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (e == 0) {
            os << rat_str(abs_c);
        } else {
            if (abs_c != 1) os << rat_str(abs_c) << '*';
            os << "e^" << rat_str(e);
        }
    }
    return os.str();
}

int compare(const EpsPoly& a, const EpsPoly& b) {
    EpsPoly diff = a - b;
    return diff.sign();
}

EpsRatio::EpsRatio(EpsPoly num, EpsPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("ratio with zero denominator");
    normalize();
}

void EpsRatio::normalize() {
    if (num_.is_zero()) {
        den_ = EpsPoly(1);
        return;
    }
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Rat k = std::min(*num_.order(), *den_.order());
    if (k > 0) {
        num_ = num_.shifted_down(k);
        den_ = den_.shifted_down(k);
    }
}

EpsRatio operator+(const EpsRatio& a, const EpsRatio& b) {
    if (a.den_ == b.den_) return EpsRatio(a.num_ + b.num_, a.den_);
    return EpsRatio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

EpsRatio operator-(const EpsRatio& a, const EpsRatio& b) {
    if (a.den_ == b.den_) return EpsRatio(a.num_ - b.num_, a.den_);
    return EpsRatio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

EpsRatio operator*(const EpsRatio& a, const EpsRatio& b) {
    return EpsRatio(a.num_ * b.num_, a.den_ * b.den_);
}

EpsRatio operator/(const EpsRatio& a, const EpsRatio& b) {
    if (b.is_zero()) throw Error("division by zero ratio");
    return EpsRatio(a.num_ * b.den_, a.den_ * b.num_);
}

EpsRatio operator-(const EpsRatio& a) { return EpsRatio(-a.num_, a.den_); }

int compare(const EpsRatio& a, const EpsRatio& b) {
    // denominators are positive, so sign(a - b) = sign(na*db - nb*da)
    return (a.num() * b.den() - b.num() * a.den()).sign();
}

bool operator==(const EpsRatio& a, const EpsRatio& b) { return compare(a, b) == 0; }

ExtRat EpsRatio::magnitude() const {
    if (sign() < 0) throw NegativeOperand("magnitude");
    if (is_zero()) return ExtRat::infinity();
    return ExtRat(*num_.order() - *den_.order());
}

bool much_smaller(const EpsRatio& a, const EpsRatio& b) {
    if (a.sign() < 0 || b.sign() < 0) throw NegativeOperand("much_smaller");
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    return a.magnitude() > b.magnitude();
}

Rat EpsRatio::eval(const Rat& u, unsigned long root) const {
    Rat d = den_.eval(u, root);
    if (d == 0) throw Error("denominator evaluates to zero at u = " + rat_str(u));
    return num_.eval(u, root) / d;
}

std::string EpsRatio::str() const {
    if (den_ == EpsPoly(1)) return num_.str();
    // the numerator is always parenthesized next to '/'; the denominator only
    // goes bare when it is a plain constant, so "e^1/2" can only mean the
    // exponent one half
    bool bare_den = den_.terms().size() == 1 && den_.order() == Rat(0) && den_.sign() > 0;
    std::string den_str = bare_den ? den_.str() : "(" + den_.str() + ")";
    return "(" + num_.str() + ")/" + den_str;
}

namespace {

// Minimal reader for the canonical ratio/poly syntax.
struct EpsReader {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, 1, static_cast<int>(pos) + 1);
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected an integer");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }

    // p or p/q
    Rat rational() {
        mpz_class num = integer();
        if (eat('/')) {
            mpz_class den = integer();
            if (den == 0) fail("zero denominator");
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        return Rat(num);
    }

    EpsPoly sum() {
        EpsPoly p = term();
        for (;;) {
            char c = peek();
            if (c == '+' || c == '-')
                p += term();
            else
                break;
        }
        return p;
    }

    // [sign] coeff ['*' e ['^' exponent]] | [sign] e ['^' exponent]
    EpsPoly term() {
        bool neg = false;
        for (;;) {
            if (eat('-'))
                neg = !neg;
            else if (!eat('+'))
                break;
        }
        Rat coeff(1);
        Rat exp(0);
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = rational();
            if (eat('*')) {
                if (peek() != 'e') fail("expected 'e' after '*'");
                ++pos;
                exp = 1;
                if (eat('^')) exp = rational();
            }
        } else if (peek() == 'e') {
            ++pos;
            exp = 1;
            if (eat('^')) exp = rational();
        } else {
            fail("expected a term");
        }
        if (neg) coeff = -coeff;
        return EpsPoly::term(exp, coeff);
    }

    EpsPoly operand() {
        if (eat('(')) {
            EpsPoly p = sum();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        return term();
    }

    void expect_done() {
        skip_ws();
        if (pos != s.size()) fail("unexpected trailing input");
    }
};

}  // namespace

EpsRatio EpsRatio::parse(std::string_view text) {
    EpsReader r{text};
    if (r.peek() == '(') {
        r.eat('(');
        EpsPoly num = r.sum();
        if (!r.eat(')')) r.fail("expected ')'");
        if (r.eat('/')) {
            EpsPoly den = r.operand();
            r.expect_done();
            return EpsRatio(std::move(num), std::move(den));
        }
        r.expect_done();
        return EpsRatio(std::move(num));
    }
    EpsPoly num = r.sum();
    r.expect_done();
    return EpsRatio(std::move(num));
}

}  // namespace dkb
