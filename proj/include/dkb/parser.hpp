#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dkb/formula.hpp"
#include "dkb/rational.hpp"

namespace dkb {

// A defeasible rule "premise ~> conclusion". The strength is the exponent of
// the rule's infinitesimal bound; 1 unless declared otherwise.
struct Default {
    Formula premise;
    Formula conclusion;
    Rat strength{1};
};

struct KnowledgeBase {
    Vocabulary vocabulary;
    std::vector<Formula> facts;       // Sigma
    std::vector<Default> defaults;    // Delta
    std::vector<Formula> queries;     // optional stored queries
};

struct CollectAtoms {};  // tag: append unseen atoms to the vocabulary

/// Parses a formula against a fixed vocabulary. Unseen names raise UnknownAtom.
Formula parse_formula(std::string_view text, const Vocabulary& vocab);

/// Parses a formula, appending new atoms in first-occurrence order.
Formula parse_formula(std::string_view text, Vocabulary& vocab, CollectAtoms);

/// Parses the line-oriented .dkb format:
///   # comment
///   atoms a b c
///   fact <formula>
///   default <formula> ~> <formula> [p/q]
///   query <formula>
/// With an `atoms` declaration the vocabulary is fixed; otherwise atoms are
/// collected in first-occurrence order.
KnowledgeBase parse_kb(std::string_view text, int atom_limit = kDefaultAtomLimit);

/// Serializes back to .dkb text.
std::string to_dkb(const KnowledgeBase& kb);

/// Conjunction of all facts; Top when Sigma is empty.
Formula fact_formula(const KnowledgeBase& kb);

}  // namespace dkb
