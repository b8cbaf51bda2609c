#include "dkb/entropy.hpp"

#include <mpfr.h>

#include <optional>

namespace dkb {

std::string EntropyVerdict::str() const {
    switch (kind) {
        case Kind::Less: return "Less(level " + std::to_string(level) + ")";
        case Kind::Greater: return "Greater(level " + std::to_string(level) + ")";
        case Kind::EqualUpToLevel: return "EqualUpToLevel(" + std::to_string(level) + ")";
        case Kind::Unstable: return "Unstable";
    }
    return "?";
}

namespace {

// ---- truncated rational series in e -------------------------------------

using TruncPoly = std::map<Rat, Rat>;  // exponent -> coefficient, truncated

void tp_add(TruncPoly& p, const Rat& exp, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = p.try_emplace(exp, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) p.erase(it);
    }
}

TruncPoly tp_mul(const TruncPoly& a, const TruncPoly& b, const Rat& bound) {
    TruncPoly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            Rat e = ea + eb;
            if (e > bound) break;  // b is ordered by exponent
            tp_add(out, e, ca * cb);
        }
    }
    return out;
}

TruncPoly tp_scale(const TruncPoly& a, const Rat& c) {
    TruncPoly out;
    if (c == 0) return out;
    for (const auto& [e, coeff] : a) out.emplace(e, coeff * c);
    return out;
}

// 1 / (1 + g) with ord(g) > 0, via the geometric series.
TruncPoly tp_inverse_unit(const TruncPoly& g, const Rat& bound) {
    TruncPoly out{{Rat(0), Rat(1)}};
    TruncPoly power{{Rat(0), Rat(1)}};
    TruncPoly neg_g = tp_scale(g, Rat(-1));
    while (true) {
        power = tp_mul(power, neg_g, bound);
        if (power.empty()) break;
        for (const auto& [e, c] : power) tp_add(out, e, c);
    }
    return out;
}

// ln(1 + f) with ord(f) > 0.
TruncPoly tp_log1p(const TruncPoly& f, const Rat& bound) {
    TruncPoly out;
    TruncPoly power = f;
    long k = 1;
    while (!power.empty()) {
        Rat factor = (k % 2 == 1) ? Rat(1, k) : Rat(-1, k);
        for (const auto& [e, c] : power) tp_add(out, e, c * factor);
        power = tp_mul(power, f, bound);
        ++k;
    }
    return out;
}

// ---- level coefficients ---------------------------------------------------

// r + s*lambda + sum_i a_i * ln(b_i), with lambda = ln(1/e) infinite positive.
struct LogLin {
    Rat r;
    Rat s;
    std::map<Rat, Rat> logs;  // base b (positive rational, != 1) -> coefficient a

    bool trivially_zero() const { return r == 0 && s == 0 && logs.empty(); }
};

void loglin_add_log(LogLin& x, const Rat& base, const Rat& coeff) {
    if (coeff == 0 || base == 1) return;
    auto [it, inserted] = x.logs.try_emplace(base, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) x.logs.erase(it);
    }
}

using Series = std::map<Rat, LogLin>;

LogLin& series_at(Series& s, const Rat& exp) { return s[exp]; }

// ---- certified interval arithmetic for ln --------------------------------

class MpfrVal {
public:
    explicit MpfrVal(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrVal() { mpfr_clear(v_); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// Sign of r + sum a_i ln b_i at the given precision: +1 / -1, or nullopt when
// the enclosing interval still straddles zero.
std::optional<int> interval_log_sign(const Rat& r, const std::map<Rat, Rat>& logs,
                                     mpfr_prec_t prec) {
    MpfrVal lo(prec), hi(prec), t(prec), l_lo(prec), l_hi(prec);
    mpfr_set_q(lo.get(), r.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), r.get_mpq_t(), MPFR_RNDU);
    for (const auto& [b, a] : logs) {
        mpfr_set_q(t.get(), b.get_mpq_t(), MPFR_RNDD);
        mpfr_log(l_lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_q(t.get(), b.get_mpq_t(), MPFR_RNDU);
        mpfr_log(l_hi.get(), t.get(), MPFR_RNDU);
        // term interval for a * [l_lo, l_hi]
        if (sgn(a) >= 0) {
            mpfr_mul_q(l_lo.get(), l_lo.get(), a.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(l_hi.get(), l_hi.get(), a.get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_swap(l_lo.get(), l_hi.get());
            mpfr_mul_q(l_lo.get(), l_lo.get(), a.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(l_hi.get(), l_hi.get(), a.get_mpq_t(), MPFR_RNDU);
        }
        mpfr_add(lo.get(), lo.get(), l_lo.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), l_hi.get(), MPFR_RNDU);
    }
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
    return std::nullopt;
}

// Sign of a LogLin coefficient; nullopt when not certifiable.
std::optional<int> loglin_sign(const LogLin& x) {
    if (x.s != 0) return sgn(x.s);  // lambda dominates any constant part
    if (x.logs.empty()) return sgn(x.r);
    if (x.r == 0) {
        // pure log sum: clear denominators and compare prod b_i^(m_i) with 1
        mpz_class m(1);
        for (const auto& [b, a] : x.logs) m = lcm(m, a.get_den());
        if (m.fits_slong_p() && m < 1000000) {
            Rat prod(1);
            bool ok = true;
            for (const auto& [b, a] : x.logs) {
                Rat scaled = a * Rat(m);
                if (!scaled.get_num().fits_slong_p()) {
                    ok = false;
                    break;
                }
                prod *= rat_pow(b, scaled.get_num().get_si());
            }
            if (ok) return prod == 1 ? 0 : (prod > 1 ? 1 : -1);
        }
    }
    // mixed rational + logs (never exactly zero for rational bases != 1):
    // refine a certified interval until the sign shows
    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        if (auto s = interval_log_sign(x.r, x.logs, prec)) return *s;
    }
    return std::nullopt;
}

// ---- entropy series -------------------------------------------------------

// Adds the expansion of -p*ln(p) to the series, truncated at `bound`.
void accumulate_world(Series& H, const EpsRatio& p, const Rat& bound) {
    if (p.is_zero()) return;  // limit value 0
    if (p.sign() < 0) throw Error("negative probability in entropy expansion");

    Rat ord_num = *p.num().order();
    Rat ord_den = *p.den().order();
    Rat m = ord_num - ord_den;
    if (m < 0) throw Error("entropy expansion of a value above order one");
    if (m > bound) return;  // entirely beyond the truncation bound

    Rat cn = p.num().leading_coeff();
    Rat cd = p.den().leading_coeff();
    Rat C = cn / cd;
    Rat local_bound = bound - m;

    // unit-normalized tails: num = cn*e^a*(1+gN), den = cd*e^b*(1+gD)
    TruncPoly one_plus_f;
    {
        TruncPoly n1, d1;
        for (const auto& [e, c] : p.num().terms()) {
            Rat shifted = e - ord_num;
            if (shifted <= local_bound) tp_add(n1, shifted, c / cn);
        }
        for (const auto& [e, c] : p.den().terms()) {
            Rat shifted = e - ord_den;
            if (shifted <= local_bound) tp_add(d1, shifted, c / cd);
        }
        TruncPoly gd = d1;
        gd.erase(Rat(0));
        one_plus_f = tp_mul(n1, tp_inverse_unit(gd, local_bound), local_bound);
    }
    TruncPoly f = one_plus_f;
    f.erase(Rat(0));

    // -p ln p = C*m*e^m*(1+f)*lambda - C*lnC*e^m*(1+f) - C*e^m*(1+f)*ln(1+f)
    if (m != 0) {
        Rat cm = C * m;
        for (const auto& [e, c] : one_plus_f) series_at(H, m + e).s += cm * c;
    }
    if (C != 1) {
        for (const auto& [e, c] : one_plus_f)
            loglin_add_log(series_at(H, m + e), C, -C * c);
    }
    TruncPoly rational_part = tp_mul(one_plus_f, tp_log1p(f, local_bound), local_bound);
    for (const auto& [e, c] : rational_part) series_at(H, m + e).r += -C * c;
}

mpz_class exponent_lattice_den(const NPDistribution& P) {
    mpz_class d(1);
    for (const EpsRatio& x : P.entries()) {
        for (const auto& [e, c] : x.num().terms()) d = lcm(d, e.get_den());
        for (const auto& [e, c] : x.den().terms()) d = lcm(d, e.get_den());
    }
    return d;
}

}  // namespace

EntropyVerdict entropy_compare(const NPDistribution& P, const NPDistribution& Q, int max_level) {
    if (P.vocabulary() != Q.vocabulary()) throw VocabularyMismatch();
    if (max_level < 0) max_level = 0;

    mpz_class lattice_den = lcm(exponent_lattice_den(P), exponent_lattice_den(Q));
    Rat step = Rat(1, lattice_den);
    Rat bound = step * max_level;

    Series HP, HQ;
    for (const EpsRatio& x : P.entries()) accumulate_world(HP, x, bound);
    for (const EpsRatio& x : Q.entries()) accumulate_world(HQ, x, bound);

    for (int level = 0; level <= max_level; ++level) {
        Rat exp = step * level;
        LogLin diff;
        if (auto it = HP.find(exp); it != HP.end()) diff = it->second;
        if (auto it = HQ.find(exp); it != HQ.end()) {
            diff.r -= it->second.r;
            diff.s -= it->second.s;
            for (const auto& [b, a] : it->second.logs) loglin_add_log(diff, b, -a);
        }
        if (diff.trivially_zero()) continue;
        std::optional<int> s = loglin_sign(diff);
        if (!s) return {EntropyVerdict::Kind::Unstable, level};
        if (*s > 0) return {EntropyVerdict::Kind::Greater, level};
        if (*s < 0) return {EntropyVerdict::Kind::Less, level};
    }
    return {EntropyVerdict::Kind::EqualUpToLevel, max_level};
}

Rat entropy_numeric(const NPDistribution& P, const Rat& u, unsigned long root, int error_bits) {
    std::vector<Rat> values;
    values.reserve(P.world_count());
    for (const EpsRatio& x : P.entries()) {
        Rat v = x.eval(u, root);
        if (v < 0) throw Error("entry evaluates negative at u = " + rat_str(u));
        if (v != 0) values.push_back(std::move(v));
    }

    Rat half(1, 2);
    Rat width_target = rat_pow(half, error_bits + 1);
    for (mpfr_prec_t prec = mpfr_prec_t(error_bits) + 64;; prec *= 2) {
        MpfrVal lo(prec), hi(prec), t(prec), l_lo(prec), l_hi(prec);
        mpfr_set_zero(lo.get(), 1);
        mpfr_set_zero(hi.get(), 1);
        for (const Rat& v : values) {
            mpfr_set_q(t.get(), v.get_mpq_t(), MPFR_RNDD);
            mpfr_log2(l_lo.get(), t.get(), MPFR_RNDD);
            mpfr_set_q(t.get(), v.get_mpq_t(), MPFR_RNDU);
            mpfr_log2(l_hi.get(), t.get(), MPFR_RNDU);
            // term -v*log2(v): negation swaps the endpoints
            Rat neg_v = -v;
            mpfr_swap(l_lo.get(), l_hi.get());
            mpfr_mul_q(l_lo.get(), l_lo.get(), neg_v.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(l_hi.get(), l_hi.get(), neg_v.get_mpq_t(), MPFR_RNDU);
            mpfr_add(lo.get(), lo.get(), l_lo.get(), MPFR_RNDD);
            mpfr_add(hi.get(), hi.get(), l_hi.get(), MPFR_RNDU);
        }
        Rat rlo, rhi;
        mpfr_get_q(rlo.get_mpq_t(), lo.get());
        mpfr_get_q(rhi.get_mpq_t(), hi.get());
        if (rhi - rlo <= width_target) return (rlo + rhi) / 2;
        if (prec > 1 << 20) throw Error("entropy_numeric failed to certify the error bound");
    }
}

}  // namespace dkb
