#include <random>

#include "doctest.h"
#include "dkb/bench.hpp"
#include "dkb/entropy.hpp"
#include "dkb/me.hpp"

using namespace dkb;

namespace {

const KnowledgeBase& instance(const std::string& name) {
    for (const BenchInstance& b : builtin_benchmarks())
        if (b.name == name) return b.kb;
    throw std::runtime_error("no such instance");
}

Formula fvar(const char* n) { return Formula::var(n); }

std::vector<Rat> rats(std::initializer_list<long> xs) {
    std::vector<Rat> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("me_weights fixpoints") {
    KnowledgeBase simple = parse_kb("default true ~> a\n");
    MEWeights w = me_weights(simple);
    CHECK(w.z == rats({1}));
    CHECK(w.feasible);

    // the redundant default in RE gets weight zero
    CHECK(me_weights(instance("RE")).z == rats({1, 0}));
    CHECK(me_weights(instance("EI")).z == rats({2, 2, 1, 1}));
    CHECK(me_weights(instance("GE")).z == rats({1, 1, 2}));
    CHECK(me_weights(instance("AP")).z == rats({1, 1, 2}));
    CHECK(me_weights(instance("ES")).z == rats({2, 2, 1, 2}));
    CHECK(me_weights(instance("NE")).z == rats({1, 0, 2}));

    KnowledgeBase clash = parse_kb("default true ~> a\ndefault true ~> !a\n");
    CHECK_THROWS_AS(me_weights(clash), InconsistentDelta);
}

TEST_CASE("me_ranking") {
    KnowledgeBase empty;
    empty.vocabulary.add("a");
    RankingFn r0 = me_ranking(empty, me_weights(empty));
    CHECK(r0.at(World{0}) == ExtRat(0));

    const KnowledgeBase& re = instance("RE");
    RankingFn r = me_ranking(re, me_weights(re));
    // vocab phi psi: bit0 = phi
    CHECK(r.at(World{0b01}) == ExtRat(0));
    CHECK(r.at(World{0b11}) == ExtRat(0));
    CHECK(r.at(World{0b10}) == ExtRat(1));
    CHECK(r.at(World{0b00}) == ExtRat(1));

    // EI world alpha,beta,!psi,phi violates only beta~>psi (weight 1)
    const KnowledgeBase& ei = instance("EI");
    RankingFn rei = me_ranking(ei, me_weights(ei));
    // vocab alpha beta psi phi: bits 0..3
    CHECK(rei.at(World{0b1011}) == ExtRat(1));
}

TEST_CASE("me_entails on the benchmark patterns") {
    CHECK(me_entails(instance("ES"), !fvar("psi")));
    CHECK(me_entails(instance("EI"), fvar("phi")));
    CHECK_FALSE(me_entails(instance("RE"), fvar("psi")));
    CHECK_FALSE(me_entails(instance("NE"), fvar("psi")));
    CHECK_FALSE(me_entails(instance("GE"), fvar("psi")));
    CHECK_FALSE(me_entails(instance("GE"), !fvar("psi")));
    CHECK_FALSE(me_entails(instance("AP"), !fvar("alpha")));
}

TEST_CASE("me_entails_plural") {
    PluralSampler sampler;
    sampler.samples = 32;
    sampler.seed = 7;
    CHECK(me_entails_plural(instance("ES"), !fvar("psi"), sampler) == MEVerdict::Entailed);
    CHECK(me_entails_plural(instance("GE"), fvar("psi"), sampler) == MEVerdict::NotEntailed);
    CHECK(me_entails_plural(instance("GE"), !fvar("psi"), sampler) == MEVerdict::NotEntailed);

    KnowledgeBase simple = parse_kb("default true ~> a\n");
    CHECK(me_entails_plural(simple, fvar("a"), sampler) == MEVerdict::Entailed);
}

TEST_CASE("construct_me_distribution") {
    KnowledgeBase empty;
    empty.vocabulary.add("a");
    NPDistribution uni = construct_me_distribution(empty, me_weights(empty));
    CHECK(uni.at(World{0}) == EpsRatio(Rat(1, 2)));
    CHECK(uni.at(World{1}) == EpsRatio(Rat(1, 2)));

    const KnowledgeBase& re = instance("RE");
    NPDistribution P = construct_me_distribution(re, me_weights(re));
    EpsPoly den = EpsPoly(2) + EpsPoly::term(1, 2);
    CHECK(P.at(World{0b01}) == EpsRatio(EpsPoly(1), den));
    CHECK(P.at(World{0b00}) == EpsRatio(EpsPoly::eps(), den));
    CHECK(is_coherent(P));

    const KnowledgeBase& ei = instance("EI");
    NPDistribution Pei = construct_me_distribution(ei, me_weights(ei));
    CHECK(is_coherent(Pei));
    for (const Default& d : ei.defaults)
        CHECK(satisfies_default(Pei, d, ConstraintMode::classical(), ZeroPremise::VacuousTrue));
}

TEST_CASE("numeric oracle reproduces the exact rankings") {
    KnowledgeBase empty;
    empty.vocabulary.add("a");
    empty.vocabulary.add("b");
    NumericMEResult r = numeric_me_oracle(empty);
    for (long k : r.kappa_hat) CHECK(k == 0);

    for (const char* name : {"RE", "EI"}) {
        const KnowledgeBase& kb = instance(name);
        RankingFn exact = me_ranking(kb, me_weights(kb));
        NumericMEResult approx = numeric_me_oracle(kb);
        for (std::uint32_t w = 0; w < exact.world_count(); ++w)
            CHECK(ExtRat(approx.kappa_hat[w]) == exact.at(World{w}));
    }
}

TEST_CASE("admissibility margins and complementary slackness") {
    std::mt19937_64 rng(303);
    int done = 0;
    while (done < 40) {
        KnowledgeBase kb = sample_kb(rng);
        MEWeights w;
        try {
            w = me_weights(kb);
        } catch (const Error&) {
            continue;
        }
        ++done;
        RankingFn R = me_ranking(kb, w);
        for (std::size_t i = 0; i < kb.defaults.size(); ++i) {
            const Default& d = kb.defaults[i];
            ExtRat viol = kappa(R, d.premise & !d.conclusion);
            ExtRat verif = kappa(R, d.premise & d.conclusion);
            // margin >= t_i (= declared strength, 1 here)
            CHECK(viol >= verif + ExtRat(d.strength));
            // slackness: a positive weight means the margin is exactly t_i
            if (w.z[i] > 0) CHECK(viol == verif + ExtRat(d.strength));
        }
    }
}

TEST_CASE("scale equivariance of the weight fixpoint") {
    std::mt19937_64 rng(404);
    int done = 0;
    while (done < 25) {
        KnowledgeBase kb = sample_kb(rng);
        StrengthVector t(kb.defaults.size(), Rat(1));
        MEWeights w1;
        try {
            w1 = me_weights(kb, t);
        } catch (const Error&) {
            continue;
        }
        ++done;
        Rat c(3, 2);
        StrengthVector ct;
        for (const Rat& x : t) ct.push_back(x * c);
        MEWeights w2 = me_weights(kb, ct);
        for (std::size_t i = 0; i < w1.z.size(); ++i) CHECK(w2.z[i] == w1.z[i] * c);

        Formula q = sample_formula(rng, kb.vocabulary, 1);
        kb.facts = {sample_formula(rng, kb.vocabulary, 1)};
        CHECK(me_entails(kb, q, t) == me_entails(kb, q, ct));
    }
}

TEST_CASE("witness distribution projects back onto the ME ranking") {
    std::mt19937_64 rng(606);
    int done = 0;
    while (done < 20) {
        KnowledgeBase kb = sample_kb(rng, 3, 3);
        MEWeights w;
        try {
            w = me_weights(kb);
        } catch (const Error&) {
            continue;
        }
        ++done;
        NPDistribution P = construct_me_distribution(kb, w);
        RankingFn direct = me_ranking(kb, w);
        RankingFn projected = ranking_from_distribution(P);
        for (std::uint32_t v = 0; v < direct.world_count(); ++v)
            CHECK(projected.at(World{v}) == direct.at(World{v}));

        // conditional ranks equal conditional-probability magnitudes
        Formula t = sample_formula(rng, kb.vocabulary, 1);
        Formula g = sample_formula(rng, kb.vocabulary, 1);
        if (!kappa(direct, g).is_infinite())
            CHECK(cond_kappa(projected, t, g) == cond_prob(P, t, g).magnitude());
    }
}

TEST_CASE("numeric oracle agrees on a random corpus at low ranks") {
    std::mt19937_64 rng(505);
    int done = 0;
    while (done < 12) {
        KnowledgeBase kb = sample_kb(rng, 3, 3);
        MEWeights w;
        try {
            w = me_weights(kb);
        } catch (const Error&) {
            continue;
        }
        bool integral = true;
        for (const Rat& z : w.z) integral = integral && rat_is_integer(z);
        if (!integral) continue;
        ++done;
        RankingFn exact = me_ranking(kb, w);
        NumericMEResult approx = numeric_me_oracle(kb);
        for (std::uint32_t v = 0; v < exact.world_count(); ++v) {
            if (exact.at(World{v}) > ExtRat(4)) continue;
            CHECK(ExtRat(approx.kappa_hat[v]) == exact.at(World{v}));
        }
    }
}
