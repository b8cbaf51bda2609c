#include "dkb/zsystem.hpp"

#include <algorithm>
#include <cmath>

namespace dkb {
namespace {

struct DefaultSets {
    std::vector<WorldSet> verif;  // models of premise & conclusion
    std::vector<WorldSet> viol;   // models of premise & !conclusion
};

DefaultSets default_sets(const std::vector<Default>& delta, const Vocabulary& vocab) {
    DefaultSets s;
    s.verif.reserve(delta.size());
    s.viol.reserve(delta.size());
    for (const Default& d : delta) {
        s.verif.push_back(model_set(d.premise & d.conclusion, vocab, kHardAtomLimit));
        s.viol.push_back(model_set(d.premise & !d.conclusion, vocab, kHardAtomLimit));
    }
    return s;
}

}  // namespace

TolerancePartition tolerance_partition(const std::vector<Default>& delta,
                                       const Vocabulary& vocab) {
    DefaultSets sets = default_sets(delta, vocab);
    std::uint32_t n_worlds = vocab.world_count(kHardAtomLimit);

    TolerancePartition out;
    std::vector<int> residue(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) residue[i] = static_cast<int>(i);

    while (!residue.empty()) {
        WorldSet viol_any(n_worlds);
        for (int i : residue) viol_any = viol_any | sets.viol[i];
        std::vector<int> tolerated;
        for (int i : residue)
            if ((sets.verif[i] - viol_any).any()) tolerated.push_back(i);
        if (tolerated.empty()) {
            out.inconsistent = true;
            return out;
        }
        std::vector<int> next;
        for (int i : residue)
            if (!std::binary_search(tolerated.begin(), tolerated.end(), i)) next.push_back(i);
        out.groups.push_back(std::move(tolerated));
        residue = std::move(next);
    }
    return out;
}

RankingFn z_ranking(const std::vector<Default>& delta, const Vocabulary& vocab) {
    TolerancePartition part = tolerance_partition(delta, vocab);
    if (part.inconsistent) throw InconsistentDelta();

    std::vector<long> z(delta.size(), 0);
    for (std::size_t g = 0; g < part.groups.size(); ++g)
        for (int i : part.groups[g]) z[i] = static_cast<long>(g);

    DefaultSets sets = default_sets(delta, vocab);
    std::uint32_t n_worlds = vocab.world_count(kHardAtomLimit);
    std::vector<ExtRat> ranks;
    ranks.reserve(n_worlds);
    for (std::uint32_t w = 0; w < n_worlds; ++w) {
        long worst = -1;
        for (std::size_t i = 0; i < delta.size(); ++i)
            if (sets.viol[i].test(w)) worst = std::max(worst, z[i]);
        ranks.emplace_back(Rat(worst + 1));
    }
    return RankingFn(vocab, std::move(ranks));
}

bool rc_entails(const KnowledgeBase& kb, const Formula& query) {
    RankingFn R = z_ranking(kb.defaults, kb.vocabulary);
    Formula facts = fact_formula(kb);
    if (kappa(R, facts).is_infinite()) return true;
    return kappa(R, facts & query) < kappa(R, facts & !query);
}

bool p_entails(const KnowledgeBase& kb, const Formula& query) {
    std::vector<Default> extended = kb.defaults;
    extended.push_back(Default{fact_formula(kb), !query, Rat(1)});
    return tolerance_partition(extended, kb.vocabulary).inconsistent;
}

bool p_entails_oracle(const KnowledgeBase& kb, const Formula& query, int cap) {
    const std::vector<Default>& delta = kb.defaults;
    const Vocabulary& vocab = kb.vocabulary;
    std::size_t k = delta.size();
    if (cap < 0) cap = static_cast<int>(k) + 1;

    Formula facts = fact_formula(kb);
    WorldSet facts_set = model_set(facts, vocab, kHardAtomLimit);
    if (facts_set.none()) return true;  // kappa(facts) infinite in every ranking

    std::uint32_t n_worlds = vocab.world_count(kHardAtomLimit);
    DefaultSets sets = default_sets(delta, vocab);
    WorldSet fq = facts_set & model_set(query, vocab, kHardAtomLimit);
    WorldSet fnq = facts_set - fq;

    // Free slots: one verifier level per default with a nonempty verifying
    // set, plus one level for the query side. Candidates are enumerated over
    // {0..cap} per slot; the construction below realizes the minimal ranking
    // for each candidate, which is a counterexample iff any ranking is.
    std::vector<int> free_slots;  // default indices with verif nonempty
    for (std::size_t i = 0; i < k; ++i)
        if (sets.verif[i].any()) free_slots.push_back(static_cast<int>(i));
    bool query_slot = fq.any();

    double candidates =
        std::pow(static_cast<double>(cap) + 1, static_cast<double>(free_slots.size() + 1));
    if (candidates * n_worlds > 2e8)
        throw TooLargeForOracle(std::to_string(n_worlds) + " worlds, " +
                                std::to_string(free_slots.size() + 1) + " level slots, cap " +
                                std::to_string(cap));

    // Per-world membership masks over the defaults (k <= 62 enforced by the
    // candidate guard long before this matters).
    std::vector<std::uint64_t> viol_mask(n_worlds, 0), verif_mask(n_worlds, 0);
    for (std::size_t i = 0; i < k; ++i) {
        sets.viol[i].for_each([&](std::uint32_t w) { viol_mask[w] |= std::uint64_t{1} << i; });
        sets.verif[i].for_each([&](std::uint32_t w) { verif_mask[w] |= std::uint64_t{1} << i; });
    }

    std::vector<int> v(k, 0);
    long n_slots = static_cast<long>(free_slots.size()) + (query_slot ? 1 : 0);
    long total = 1;
    for (long s = 0; s < n_slots; ++s) total *= cap + 1;

    const int kInf = cap + 3;  // above any reachable rank
    std::vector<int> min_verif(k), min_viol(k);
    for (long code = 0; code < total; ++code) {
        long rest = code;
        for (int slot : free_slots) {
            v[static_cast<std::size_t>(slot)] = static_cast<int>(rest % (cap + 1));
            rest /= cap + 1;
        }
        int wq = query_slot ? static_cast<int>(rest % (cap + 1)) : 0;

        std::fill(min_verif.begin(), min_verif.end(), kInf);
        std::fill(min_viol.begin(), min_viol.end(), kInf);
        int min_fq = kInf, min_fnq = kInf;
        for (std::uint32_t w = 0; w < n_worlds; ++w) {
            int r = 0;
            std::uint64_t vm = viol_mask[w];
            while (vm) {
                int i = __builtin_ctzll(vm);
                vm &= vm - 1;
                r = std::max(r, v[static_cast<std::size_t>(i)] + 1);
            }
            if (fq.test(w)) r = std::max(r, wq);
            std::uint64_t em = verif_mask[w];
            while (em) {
                int i = __builtin_ctzll(em);
                em &= em - 1;
                min_verif[static_cast<std::size_t>(i)] =
                    std::min(min_verif[static_cast<std::size_t>(i)], r);
            }
            vm = viol_mask[w];
            while (vm) {
                int i = __builtin_ctzll(vm);
                vm &= vm - 1;
                min_viol[static_cast<std::size_t>(i)] =
                    std::min(min_viol[static_cast<std::size_t>(i)], r);
            }
            if (fq.test(w)) min_fq = std::min(min_fq, r);
            if (fnq.test(w)) min_fnq = std::min(min_fnq, r);
        }

        bool admissible = true;
        for (std::size_t i = 0; i < k && admissible; ++i) {
            if (min_viol[i] >= kInf) continue;                 // nothing violates d_i
            if (min_verif[i] >= kInf || min_viol[i] < min_verif[i] + 1) admissible = false;
        }
        if (!admissible) continue;
        if (min_fq >= min_fnq) return false;  // counterexample ranking found
    }
    return true;
}

bool lex_entails(const KnowledgeBase& kb, const Formula& query) {
    TolerancePartition part = tolerance_partition(kb.defaults, kb.vocabulary);
    if (part.inconsistent) throw InconsistentDelta();

    std::size_t n_groups = part.groups.size();
    std::vector<int> group_of(kb.defaults.size(), 0);
    for (std::size_t g = 0; g < n_groups; ++g)
        for (int i : part.groups[g]) group_of[static_cast<std::size_t>(i)] = static_cast<int>(g);

    DefaultSets sets = default_sets(kb.defaults, kb.vocabulary);
    Formula facts = fact_formula(kb);
    WorldSet fs = model_set(facts, kb.vocabulary, kHardAtomLimit);
    if (fs.none()) return true;

    auto signature = [&](std::uint32_t w) {
        std::vector<std::uint32_t> sig(n_groups, 0);
        for (std::size_t i = 0; i < kb.defaults.size(); ++i)
            if (sets.viol[i].test(w)) ++sig[static_cast<std::size_t>(group_of[i])];
        return sig;
    };
    // fewer violations preferred, highest group compared first
    auto better = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        for (std::size_t g = n_groups; g-- > 0;) {
            if (a[g] != b[g]) return a[g] < b[g];
        }
        return false;
    };

    std::vector<std::uint32_t> best;
    bool have_best = false;
    fs.for_each([&](std::uint32_t w) {
        auto sig = signature(w);
        if (!have_best || better(sig, best)) {
            best = std::move(sig);
            have_best = true;
        }
    });

    WorldSet qset = model_set(query, kb.vocabulary, kHardAtomLimit);
    bool all_satisfy = true;
    fs.for_each([&](std::uint32_t w) {
        if (!all_satisfy) return;
        if (signature(w) == best && !qset.test(w)) all_satisfy = false;
    });
    return all_satisfy;
}

}  // namespace dkb
