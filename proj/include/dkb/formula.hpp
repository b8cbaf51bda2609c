#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkb/errors.hpp"

namespace dkb {

// Default cap on exhaustive world enumeration: 2^20 worlds. Configurable per
// call; the fixed atom order defines a stable world indexing (bit i = atom i).
inline constexpr int kDefaultAtomLimit = 20;

// Absolute ceiling: world indices are 32-bit and enumeration is exact, so no
// vocabulary above this is representable no matter what limit a caller picks.
// Engine internals gate at this ceiling; the user-facing limit is checked once
// where a vocabulary enters (parse_kb, models).
inline constexpr int kHardAtomLimit = 30;

struct Atom {
    std::string name;

    /// Nonempty, [A-Za-z_][A-Za-z0-9_]*, and not `true`/`false`.
    static bool valid_name(std::string_view name);
};

// Ordered set of distinct atoms. The order is fixed for the lifetime of a
// knowledge base; world indices depend on it.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Appends an atom. Throws DuplicateAtomDeclaration / std::invalid_argument.
    int add(const std::string& name);

    /// Index of the atom, or -1 when absent.
    int index_of(std::string_view name) const;

    std::size_t size() const { return atoms_.size(); }
    const std::string& name(int i) const { return atoms_[static_cast<std::size_t>(i)].name; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    /// 2^size. Throws VocabularyTooLarge when size exceeds the limit.
    std::uint32_t world_count(int atom_limit = kDefaultAtomLimit) const;

    friend bool operator==(const Vocabulary& a, const Vocabulary& b);
    friend bool operator!=(const Vocabulary& a, const Vocabulary& b) { return !(a == b); }

private:
    std::vector<Atom> atoms_;
    std::map<std::string, int, std::less<>> index_;
};

// A total truth assignment, packed as bits under the vocabulary order.
struct World {
    std::uint32_t bits = 0;

    bool get(int atom_index) const { return (bits >> atom_index) & 1u; }

    friend bool operator==(World a, World b) { return a.bits == b.bits; }
    friend bool operator<(World a, World b) { return a.bits < b.bits; }
};

std::string world_str(World w, const Vocabulary& vocab);

// Immutable propositional AST. Shared subtrees are fine; formulas are values.
class Formula {
public:
    enum class Kind { Top, Bottom, Var, Not, And, Or, Implies, Iff };

    Formula() : Formula(top()) {}

    static Formula top();
    static Formula bottom();
    static Formula var(const std::string& name);

    Kind kind() const { return n_->kind; }
    const std::string& atom() const { return n_->atom; }
    Formula lhs() const { return Formula(n_->lhs); }
    Formula rhs() const { return Formula(n_->rhs); }

    /// Structural equality (not logical equivalence).
    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

    friend Formula operator!(const Formula& f);
    friend Formula operator&(const Formula& a, const Formula& b);
    friend Formula operator|(const Formula& a, const Formula& b);
    friend Formula implies(const Formula& a, const Formula& b);
    friend Formula iff(const Formula& a, const Formula& b);

private:
    struct Node {
        Kind kind;
        std::string atom;                   // Var only
        std::shared_ptr<const Node> lhs;    // unary/binary
        std::shared_ptr<const Node> rhs;    // binary only
    };

    explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Formula make(Kind k, std::shared_ptr<const Node> l = nullptr,
                        std::shared_ptr<const Node> r = nullptr);

    std::shared_ptr<const Node> n_;
};

/// Canonical rendering with minimal parentheses; parse(to_string(f)) is
/// logically identical to f.
std::string to_string(const Formula& f);

/// Classical truth value of f at w. Throws UnknownAtom when f mentions an
/// atom outside the vocabulary.
bool evaluate(const Formula& f, World w, const Vocabulary& vocab);

// Bitset over the 2^n worlds of a vocabulary.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(std::uint32_t n_worlds, bool fill = false);

    std::uint32_t universe_size() const { return n_; }
    bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    bool none() const;
    bool any() const { return !none(); }
    std::uint32_t count() const;
    std::optional<std::uint32_t> first() const;

    WorldSet operator&(const WorldSet& o) const;
    WorldSet operator|(const WorldSet& o) const;
    WorldSet operator-(const WorldSet& o) const;  // set difference
    WorldSet complement() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint32_t i = 0; i < n_; ++i)
            if (test(i)) f(i);
    }

    friend bool operator==(const WorldSet& a, const WorldSet& b) = default;

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Exactly the worlds satisfying f, ordered by world index.
std::vector<World> models(const Formula& f, const Vocabulary& vocab,
                          int atom_limit = kDefaultAtomLimit);

/// Same as models(), as a bitset.
WorldSet model_set(const Formula& f, const Vocabulary& vocab,
                   int atom_limit = kDefaultAtomLimit);

/// Logical equivalence, decided by model-set equality.
bool equivalent(const Formula& a, const Formula& b, const Vocabulary& vocab,
                int atom_limit = kDefaultAtomLimit);

}  // namespace dkb
