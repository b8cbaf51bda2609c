#include "dkb/me.hpp"

#include <cmath>
#include <random>

namespace dkb {
namespace {

struct ViolationTable {
    std::vector<std::uint64_t> viol_mask;   // per world: bitmask of violated defaults
    std::vector<WorldSet> verif, viol;      // per default
};

ViolationTable build_table(const KnowledgeBase& kb) {
    ViolationTable t;
    std::uint32_t n_worlds = kb.vocabulary.world_count(kHardAtomLimit);
    t.viol_mask.assign(n_worlds, 0);
    for (std::size_t i = 0; i < kb.defaults.size(); ++i) {
        const Default& d = kb.defaults[i];
        t.verif.push_back(model_set(d.premise & d.conclusion, kb.vocabulary, kHardAtomLimit));
        t.viol.push_back(model_set(d.premise & !d.conclusion, kb.vocabulary, kHardAtomLimit));
        t.viol[i].for_each([&](std::uint32_t w) { t.viol_mask[w] |= std::uint64_t{1} << i; });
    }
    return t;
}

StrengthVector effective_strengths(const KnowledgeBase& kb, const StrengthVector& t) {
    if (t.empty()) {
        StrengthVector out;
        out.reserve(kb.defaults.size());
        for (const Default& d : kb.defaults) out.push_back(d.strength);
        return out;
    }
    if (t.size() != kb.defaults.size())
        throw Error("strength vector has " + std::to_string(t.size()) + " entries for " +
                    std::to_string(kb.defaults.size()) + " defaults");
    for (const Rat& x : t)
        if (x <= 0) throw StrengthNotPositive(rat_str(x));
    return t;
}

Rat weight_sum(const std::vector<Rat>& z, std::uint64_t mask, int skip = -1) {
    Rat s(0);
    while (mask) {
        int i = __builtin_ctzll(mask);
        mask &= mask - 1;
        if (i != skip) s += z[static_cast<std::size_t>(i)];
    }
    return s;
}

}  // namespace

MEWeights me_weights(const KnowledgeBase& kb, const StrengthVector& t_in, const MEOptions& opts) {
    if (tolerance_partition(kb.defaults, kb.vocabulary).inconsistent) throw InconsistentDelta();
    StrengthVector t = effective_strengths(kb, t_in);
    std::size_t k = kb.defaults.size();
    if (k > 62) throw Error("too many defaults for the weight solver");

    ViolationTable table = build_table(kb);

    // V_i: min weight sum over verifying worlds; W_i: min over violating
    // worlds, own weight excluded. Delta is tolerable, so every default has a
    // verifying world; a default nothing violates keeps weight 0.
    auto min_verif = [&](const std::vector<Rat>& z, std::size_t i) {
        ExtRat lo = ExtRat::infinity();
        table.verif[i].for_each(
            [&](std::uint32_t w) { lo = min(lo, ExtRat(weight_sum(z, table.viol_mask[w]))); });
        return lo;
    };
    auto min_viol_rest = [&](const std::vector<Rat>& z, std::size_t i) {
        ExtRat lo = ExtRat::infinity();
        table.viol[i].for_each([&](std::uint32_t w) {
            lo = min(lo, ExtRat(weight_sum(z, table.viol_mask[w], static_cast<int>(i))));
        });
        return lo;
    };

    MEWeights out;
    out.z = t;
    std::vector<Rat> next(k);
    for (out.iterations = 1; out.iterations <= opts.max_iters; ++out.iterations) {
        bool changed = false;
        for (std::size_t i = 0; i < k; ++i) {
            ExtRat W = min_viol_rest(out.z, i);
            if (W.is_infinite()) {
                next[i] = 0;
            } else {
                ExtRat V = min_verif(out.z, i);
                if (V.is_infinite())
                    throw MEInfeasible();  // unverifiable default; cannot occur after tolerance
                Rat candidate = t[i] + V.value() - W.value();
                next[i] = candidate > 0 ? candidate : Rat(0);
            }
            changed = changed || next[i] != out.z[i];
        }
        out.z.swap(next);
        if (!changed) break;
        if (out.iterations == opts.max_iters) throw MEDivergence(opts.max_iters);
    }

    // re-verify feasibility and complementary slackness on the fixpoint
    for (std::size_t i = 0; i < k; ++i) {
        ExtRat W = min_viol_rest(out.z, i);
        if (W.is_infinite()) continue;
        ExtRat V = min_verif(out.z, i);
        ExtRat lhs = W + ExtRat(out.z[i]);
        ExtRat rhs = V + ExtRat(t[i]);
        if (lhs < rhs) throw MEInfeasible();
        if (out.z[i] > 0 && lhs != rhs) throw MEInfeasible();
    }
    out.feasible = true;
    return out;
}

RankingFn me_ranking(const KnowledgeBase& kb, const MEWeights& weights) {
    if (!weights.feasible) throw MEInfeasible();
    ViolationTable table = build_table(kb);
    std::uint32_t n_worlds = kb.vocabulary.world_count(kHardAtomLimit);
    std::vector<ExtRat> ranks;
    ranks.reserve(n_worlds);
    for (std::uint32_t w = 0; w < n_worlds; ++w)
        ranks.emplace_back(weight_sum(weights.z, table.viol_mask[w]));
    return RankingFn(kb.vocabulary, std::move(ranks));
}

bool me_entails(const KnowledgeBase& kb, const Formula& query, const StrengthVector& t,
                const MEOptions& opts) {
    MEWeights z = me_weights(kb, t, opts);
    RankingFn R = me_ranking(kb, z);
    Formula facts = fact_formula(kb);
    if (kappa(R, facts).is_infinite()) return true;
    return kappa(R, facts & !query) > kappa(R, facts & query);
}

std::string verdict_str(MEVerdict v) {
    switch (v) {
        case MEVerdict::Entailed: return "entailed";
        case MEVerdict::NotEntailed: return "not-entailed";
        case MEVerdict::Unknown: return "unknown";
    }
    return "?";
}

MEVerdict me_entails_plural(const KnowledgeBase& kb, const Formula& query,
                            const PluralSampler& sampler, const MEOptions& opts) {
    std::size_t k = kb.defaults.size();
    std::vector<StrengthVector> plan;
    plan.emplace_back(k, Rat(1));
    for (std::size_t i = 0; i < k; ++i) {
        StrengthVector t(k, Rat(1));
        t[i] = 8;
        plan.push_back(std::move(t));
    }
    std::mt19937_64 rng(sampler.seed);
    std::uniform_int_distribution<int> grid(0, 256);
    Rat span = sampler.exp_max - sampler.exp_min;
    if (span < 0) throw Error("empty strength-exponent range");
    for (int s = 0; s < sampler.samples; ++s) {
        StrengthVector t;
        t.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            t.push_back(sampler.exp_min + span * frac(grid(rng), 256));
        plan.push_back(std::move(t));
    }

    bool any_error = false;
    for (const StrengthVector& t : plan) {
        try {
            if (!me_entails(kb, query, t, opts)) return MEVerdict::NotEntailed;
        } catch (const MEDivergence&) {
            any_error = true;
        } catch (const MEInfeasible&) {
            any_error = true;
        }
    }
    return any_error ? MEVerdict::Unknown : MEVerdict::Entailed;
}

NPDistribution construct_me_distribution(const KnowledgeBase& kb, const MEWeights& weights) {
    RankingFn R = me_ranking(kb, weights);
    EpsPoly total;
    std::vector<EpsPoly> nums;
    nums.reserve(R.world_count());
    for (std::uint32_t w = 0; w < R.world_count(); ++w) {
        EpsPoly term = EpsPoly::term(R.at(World{w}).value(), 1);
        total += term;
        nums.push_back(std::move(term));
    }
    std::vector<EpsRatio> p;
    p.reserve(nums.size());
    for (EpsPoly& n : nums) p.emplace_back(std::move(n), total);
    return NPDistribution(kb.vocabulary, std::move(p));
}

NumericMEResult numeric_me_oracle(const KnowledgeBase& kb, const StrengthVector& t_in,
                                  const Rat& u, double tol, int max_iters) {
    if (tolerance_partition(kb.defaults, kb.vocabulary).inconsistent) throw InconsistentDelta();
    StrengthVector t = effective_strengths(kb, t_in);
    std::size_t k = kb.defaults.size();
    ViolationTable table = build_table(kb);
    std::uint32_t n_worlds = kb.vocabulary.world_count(kHardAtomLimit);

    // Maximize -sum p ln p over the simplex subject to
    //   sum_{w in viol_i} p_w <= U_i * sum_{w in prem_i} p_w,  U_i = u^t_i.
    // Stationarity gives p_w proportional to exp(-sum_i mu_i a_iw), with
    //   a_iw = 1 - U_i (violating), -U_i (verifying), 0 (premise false),
    // and each coordinate maximizer has the closed form below.
    long double log_u = std::log(static_cast<long double>(u.get_d()));
    std::vector<long double> U(k);
    for (std::size_t i = 0; i < k; ++i)
        U[i] = std::exp(static_cast<long double>(t[i].get_d()) * log_u);

    std::vector<long double> mu(k, 0.0L);
    std::vector<long double> s(n_worlds, 0.0L);  // sum_i mu_i a_iw

    auto apply = [&](std::size_t i, long double delta) {
        if (delta == 0.0L) return;
        table.viol[i].for_each([&](std::uint32_t w) { s[w] += delta * (1.0L - U[i]); });
        table.verif[i].for_each([&](std::uint32_t w) { s[w] -= delta * U[i]; });
        mu[i] += delta;
    };

    int iters = 0;
    long double residual = 0.0L;
    for (; iters < max_iters; ++iters) {
        long double worst = 0.0L;
        for (std::size_t i = 0; i < k; ++i) {
            // A: violating mass, B: verifying mass, own multiplier removed
            long double A = 0.0L, B = 0.0L;
            table.viol[i].for_each(
                [&](std::uint32_t w) { A += std::exp(-(s[w] - mu[i] * (1.0L - U[i]))); });
            table.verif[i].for_each(
                [&](std::uint32_t w) { B += std::exp(-(s[w] + mu[i] * U[i])); });
            long double target = 0.0L;
            if (A > 0.0L && B > 0.0L) {
                target = std::log((1.0L - U[i]) * A / (U[i] * B));
                if (target < 0.0L) target = 0.0L;
            }
            long double delta = target - mu[i];
            worst = std::max(worst, delta < 0 ? -delta : delta);
            apply(i, delta);
        }
        residual = worst;
        if (worst <= tol) break;
    }
    if (residual > tol) throw SolverFailure("stationarity gap " + std::to_string((double)residual));

    // normalize and project to log base u
    long double zsum = 0.0L;
    for (std::uint32_t w = 0; w < n_worlds; ++w) zsum += std::exp(-s[w]);
    long double log_zsum = std::log(zsum);

    NumericMEResult out;
    out.iterations = iters;
    out.log_u.resize(n_worlds);
    out.kappa_hat.resize(n_worlds);
    out.multipliers.resize(k);
    long double scale = -log_u;  // ln(1/u) > 0
    long double zhat_sum = 0.0L;
    for (std::size_t i = 0; i < k; ++i) {
        out.multipliers[i] = static_cast<double>(mu[i] / scale);
        zhat_sum += mu[i] / scale;
    }
    long clamp_hi = static_cast<long>(std::ceil(static_cast<double>(zhat_sum))) +
                    static_cast<long>(k);
    for (std::uint32_t w = 0; w < n_worlds; ++w) {
        long double lp = -s[w] - log_zsum;     // ln p_w
        long double in_u = lp / log_u;         // log_u p_w
        out.log_u[w] = static_cast<double>(in_u);
        long rounded = std::lround(static_cast<double>(in_u));
        out.kappa_hat[w] = std::min(std::max(rounded, 0L), clamp_hi);
    }
    return out;
}

}  // namespace dkb
