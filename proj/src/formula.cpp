#include "dkb/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dkb {

bool Atom::valid_name(std::string_view name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    for (char c : name.substr(1))
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return name != "true" && name != "false";
}

int Vocabulary::add(const std::string& name) {
    if (!Atom::valid_name(name))
        throw std::invalid_argument("invalid atom name: '" + name + "'");
    if (index_.count(name)) throw DuplicateAtomDeclaration(name);
    int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(Atom{name});
    index_.emplace(name, idx);
    return idx;
}

int Vocabulary::index_of(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::uint32_t Vocabulary::world_count(int atom_limit) const {
    if (atom_limit > kHardAtomLimit) atom_limit = kHardAtomLimit;
    if (atoms_.size() > static_cast<std::size_t>(atom_limit))
        throw VocabularyTooLarge(atoms_.size(), static_cast<std::size_t>(atom_limit));
    return std::uint32_t{1} << atoms_.size();
}

bool operator==(const Vocabulary& a, const Vocabulary& b) {
    if (a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
        if (a.atoms_[i].name != b.atoms_[i].name) return false;
    return true;
}

std::string world_str(World w, const Vocabulary& vocab) {
    std::string s;
    s.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i)
        s.push_back(w.get(static_cast<int>(i)) ? '1' : '0');
    return s;
}

Formula Formula::make(Kind k, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return Formula(std::move(n));
}

Formula Formula::top() {
    static const Formula t = make(Kind::Top);
    return t;
}

Formula Formula::bottom() {
    static const Formula b = make(Kind::Bottom);
    return b;
}

Formula Formula::var(const std::string& name) {
    if (!Atom::valid_name(name))
        throw std::invalid_argument("invalid atom name: '" + name + "'");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->atom = name;
    return Formula(std::move(n));
}

Formula operator!(const Formula& f) { return Formula::make(Formula::Kind::Not, f.n_); }
Formula operator&(const Formula& a, const Formula& b) {
    return Formula::make(Formula::Kind::And, a.n_, b.n_);
}
Formula operator|(const Formula& a, const Formula& b) {
    return Formula::make(Formula::Kind::Or, a.n_, b.n_);
}
Formula implies(const Formula& a, const Formula& b) {
    return Formula::make(Formula::Kind::Implies, a.n_, b.n_);
}
Formula iff(const Formula& a, const Formula& b) {
    return Formula::make(Formula::Kind::Iff, a.n_, b.n_);
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Formula::Kind::Top:
        case Formula::Kind::Bottom:
            return true;
        case Formula::Kind::Var:
            return a.atom() == b.atom();
        case Formula::Kind::Not:
            return a.lhs() == b.lhs();
        default:
            return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

namespace {

// Precedence for printing; higher binds tighter.
int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 1;
        case Formula::Kind::Implies: return 2;
        case Formula::Kind::Or: return 3;
        case Formula::Kind::And: return 4;
        case Formula::Kind::Not: return 5;
        default: return 6;
    }
}

void print(const Formula& f, int parent_prec, std::ostream& os) {
    int prec = precedence(f.kind());
    bool parens = prec < parent_prec;
    if (parens) os << '(';
    switch (f.kind()) {
        case Formula::Kind::Top: os << "true"; break;
        case Formula::Kind::Bottom: os << "false"; break;
        case Formula::Kind::Var: os << f.atom(); break;
        case Formula::Kind::Not:
            os << '!';
            print(f.lhs(), prec + 1, os);
            break;
        case Formula::Kind::And:
            print(f.lhs(), prec, os);
            os << " & ";
            print(f.rhs(), prec + 1, os);
            break;
        case Formula::Kind::Or:
            print(f.lhs(), prec, os);
            os << " | ";
            print(f.rhs(), prec + 1, os);
            break;
        case Formula::Kind::Implies:
            // right-associative
            print(f.lhs(), prec + 1, os);
            os << " -> ";
            print(f.rhs(), prec, os);
            break;
        case Formula::Kind::Iff:
            print(f.lhs(), prec, os);
            os << " <-> ";
            print(f.rhs(), prec + 1, os);
            break;
    }
    if (parens) os << ')';
}

// Postfix bytecode for fast repeated evaluation.
struct Instr {
    Formula::Kind op;
    int var = -1;
};

void compile(const Formula& f, const Vocabulary& vocab, std::vector<Instr>& out) {
    switch (f.kind()) {
        case Formula::Kind::Top:
        case Formula::Kind::Bottom:
            out.push_back({f.kind()});
            break;
        case Formula::Kind::Var: {
            int idx = vocab.index_of(f.atom());
            if (idx < 0) throw UnknownAtom(f.atom());
            out.push_back({f.kind(), idx});
            break;
        }
        case Formula::Kind::Not:
            compile(f.lhs(), vocab, out);
            out.push_back({f.kind()});
            break;
        default:
            compile(f.lhs(), vocab, out);
            compile(f.rhs(), vocab, out);
            out.push_back({f.kind()});
            break;
    }
}

bool run(const std::vector<Instr>& code, World w, std::vector<char>& stack) {
    stack.clear();
    for (const Instr& in : code) {
        switch (in.op) {
            case Formula::Kind::Top: stack.push_back(1); break;
            case Formula::Kind::Bottom: stack.push_back(0); break;
            case Formula::Kind::Var: stack.push_back(w.get(in.var)); break;
            case Formula::Kind::Not: stack.back() = !stack.back(); break;
            default: {
                char b = stack.back();
                stack.pop_back();
                char a = stack.back();
                char r = 0;
                switch (in.op) {
                    case Formula::Kind::And: r = a && b; break;
                    case Formula::Kind::Or: r = a || b; break;
                    case Formula::Kind::Implies: r = !a || b; break;
                    case Formula::Kind::Iff: r = a == b; break;
                    default: break;
                }
                stack.back() = r;
            }
        }
    }
    return stack.back();
}

}  // namespace

std::string to_string(const Formula& f) {
    std::ostringstream os;
    print(f, 0, os);
    return os.str();
}

bool evaluate(const Formula& f, World w, const Vocabulary& vocab) {
    switch (f.kind()) {
        case Formula::Kind::Top: return true;
        case Formula::Kind::Bottom: return false;
        case Formula::Kind::Var: {
            int idx = vocab.index_of(f.atom());
            if (idx < 0) throw UnknownAtom(f.atom());
            return w.get(idx);
        }
        case Formula::Kind::Not: return !evaluate(f.lhs(), w, vocab);
        case Formula::Kind::And: return evaluate(f.lhs(), w, vocab) && evaluate(f.rhs(), w, vocab);
        case Formula::Kind::Or: return evaluate(f.lhs(), w, vocab) || evaluate(f.rhs(), w, vocab);
        case Formula::Kind::Implies:
            return !evaluate(f.lhs(), w, vocab) || evaluate(f.rhs(), w, vocab);
        case Formula::Kind::Iff:
            return evaluate(f.lhs(), w, vocab) == evaluate(f.rhs(), w, vocab);
    }
    return false;  // unreachable
}

WorldSet::WorldSet(std::uint32_t n_worlds, bool fill) : n_(n_worlds), w_((n_worlds + 63) / 64, 0) {
    if (fill) {
        for (auto& word : w_) word = ~std::uint64_t{0};
        if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
}

bool WorldSet::none() const {
    for (auto word : w_)
        if (word) return false;
    return true;
}

std::uint32_t WorldSet::count() const {
    std::uint32_t c = 0;
    for (auto word : w_) c += static_cast<std::uint32_t>(__builtin_popcountll(word));
    return c;
}

std::optional<std::uint32_t> WorldSet::first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<std::uint32_t>(i * 64 + __builtin_ctzll(w_[i]));
    return std::nullopt;
}

WorldSet WorldSet::operator&(const WorldSet& o) const {
    WorldSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
}

WorldSet WorldSet::operator|(const WorldSet& o) const {
    WorldSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
}

WorldSet WorldSet::operator-(const WorldSet& o) const {
    WorldSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
}

WorldSet WorldSet::complement() const {
    WorldSet r(n_, true);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~w_[i];
    return r;
}

WorldSet model_set(const Formula& f, const Vocabulary& vocab, int atom_limit) {
    std::uint32_t n = vocab.world_count(atom_limit);
    std::vector<Instr> code;
    compile(f, vocab, code);
    std::vector<char> stack;
    stack.reserve(code.size());
    WorldSet out(n);
    for (std::uint32_t i = 0; i < n; ++i)
        if (run(code, World{i}, stack)) out.set(i);
    return out;
}

std::vector<World> models(const Formula& f, const Vocabulary& vocab, int atom_limit) {
    WorldSet s = model_set(f, vocab, atom_limit);
    std::vector<World> out;
    out.reserve(s.count());
    s.for_each([&](std::uint32_t i) { out.push_back(World{i}); });
    return out;
}

bool equivalent(const Formula& a, const Formula& b, const Vocabulary& vocab, int atom_limit) {
    return model_set(a, vocab, atom_limit) == model_set(b, vocab, atom_limit);
}

}  // namespace dkb
