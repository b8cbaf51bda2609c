#include "dkb/parser.hpp"

#include <cctype>
#include <sstream>

namespace dkb {
namespace {

enum class Tok {
    End,
    Ident,
    True,
    False,
    Not,       // !
    And,       // &
    Or,        // |
    Arrow,     // ->
    DArrow,    // <->
    Squig,     // ~>
    LParen,
    RParen,
    LBracket,
    RBracket,
    Int,
    Slash,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    Lexer(std::string_view src, int line) : src_(src), line_(line) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'))
            ++pos_;
        tok_.line = line_;
        tok_.col = static_cast<int>(pos_) + 1;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::End, "", line_, tok_.col};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            tok_ = {k, std::string(1, c), line_, tok_.col};
            ++pos_;
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string word(src_.substr(start, pos_ - start));
            Tok k = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
            tok_ = {k, std::move(word), line_, static_cast<int>(start) + 1};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            tok_ = {Tok::Int, std::string(src_.substr(start, pos_ - start)), line_,
                    static_cast<int>(start) + 1};
            return;
        }
        switch (c) {
            case '!': single(Tok::Not); return;
            case '&': single(Tok::And); return;
            case '|': single(Tok::Or); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case '/': single(Tok::Slash); return;
            case '-':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                    tok_ = {Tok::Arrow, "->", line_, tok_.col};
                    pos_ += 2;
                    return;
                }
                break;
            case '~':
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                    tok_ = {Tok::Squig, "~>", line_, tok_.col};
                    pos_ += 2;
                    return;
                }
                break;
            case '<':
                if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '-' && src_[pos_ + 2] == '>') {
                    tok_ = {Tok::DArrow, "<->", line_, tok_.col};
                    pos_ += 3;
                    return;
                }
                break;
            default:
                break;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line_,
                         static_cast<int>(pos_) + 1);
    }

    std::string_view src_;
    int line_;
    std::size_t pos_ = 0;
    Token tok_{Tok::End, "", 0, 0};
};

class FormulaParser {
public:
    FormulaParser(Lexer& lx, const Vocabulary* fixed, Vocabulary* collect)
        : lx_(lx), fixed_(fixed), collect_(collect) {}

    // iff is the loosest level; chains associate to the left.
    Formula parse_iff() {
        Formula f = parse_implies();
        while (lx_.peek().kind == Tok::DArrow) {
            lx_.next();
            f = iff(f, parse_implies());
        }
        return f;
    }

private:
    Formula parse_implies() {
        Formula f = parse_or();
        if (lx_.peek().kind == Tok::Arrow) {
            lx_.next();
            return implies(f, parse_implies());  // right-associative
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (lx_.peek().kind == Tok::Or) {
            lx_.next();
            f = f | parse_and();
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (lx_.peek().kind == Tok::And) {
            lx_.next();
            f = f & parse_unary();
        }
        return f;
    }

    Formula parse_unary() {
        Token t = lx_.peek();
        switch (t.kind) {
            case Tok::Not:
                lx_.next();
                return !parse_unary();
            case Tok::True:
                lx_.next();
                return Formula::top();
            case Tok::False:
                lx_.next();
                return Formula::bottom();
            case Tok::LParen: {
                lx_.next();
                Formula f = parse_iff();
                if (lx_.peek().kind != Tok::RParen) lx_.fail("expected ')'");
                lx_.next();
                return f;
            }
            case Tok::Ident: {
                lx_.next();
                if (fixed_) {
                    if (fixed_->index_of(t.text) < 0) throw UnknownAtom(t.text);
                } else if (collect_->index_of(t.text) < 0) {
                    collect_->add(t.text);
                }
                return Formula::var(t.text);
            }
            default:
                lx_.fail("expected a formula, got '" + (t.kind == Tok::End ? "end of input" : t.text) +
                         "'");
        }
    }

    Lexer& lx_;
    const Vocabulary* fixed_;
    Vocabulary* collect_;
};

Formula parse_fragment(Lexer& lx, const Vocabulary* fixed, Vocabulary* collect) {
    FormulaParser p(lx, fixed, collect);
    return p.parse_iff();
}

void expect_end(Lexer& lx) {
    if (lx.peek().kind != Tok::End)
        lx.fail("unexpected trailing input '" + lx.peek().text + "'");
}

Rat parse_strength(Lexer& lx) {
    if (lx.peek().kind != Tok::Int) lx.fail("expected strength numerator");
    std::string num = lx.next().text;
    std::string den = "1";
    if (lx.peek().kind == Tok::Slash) {
        lx.next();
        if (lx.peek().kind != Tok::Int) lx.fail("expected strength denominator");
        den = lx.next().text;
    }
    if (lx.peek().kind != Tok::RBracket) lx.fail("expected ']'");
    lx.next();
    std::string text = den == "1" ? num : num + "/" + den;
    if (den == "0") throw ParseError("strength denominator is zero", lx.peek().line, lx.peek().col);
    Rat r = rat_parse(text);
    if (r <= 0) throw StrengthNotPositive(text);
    return r;
}

}  // namespace

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
    Lexer lx(text, 1);
    Formula f = parse_fragment(lx, &vocab, nullptr);
    expect_end(lx);
    return f;
}

Formula parse_formula(std::string_view text, Vocabulary& vocab, CollectAtoms) {
    Lexer lx(text, 1);
    Formula f = parse_fragment(lx, nullptr, &vocab);
    expect_end(lx);
    return f;
}

KnowledgeBase parse_kb(std::string_view text, int atom_limit) {
    KnowledgeBase kb;
    bool declared = false;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        Lexer lx(line, line_no);
        if (lx.peek().kind == Tok::End) continue;
        if (lx.peek().kind != Tok::Ident)
            lx.fail("expected a directive (atoms/fact/default/query)");
        Token head = lx.next();

        if (head.text == "atoms") {
            if (lx.peek().kind == Tok::End) lx.fail("expected at least one atom name");
            while (lx.peek().kind != Tok::End) {
                if (lx.peek().kind != Tok::Ident) lx.fail("expected an atom name");
                kb.vocabulary.add(lx.next().text);  // throws DuplicateAtomDeclaration
            }
            declared = true;
        } else if (head.text == "fact") {
            Formula f = declared ? parse_fragment(lx, &kb.vocabulary, nullptr)
                                 : parse_fragment(lx, nullptr, &kb.vocabulary);
            expect_end(lx);
            kb.facts.push_back(std::move(f));
        } else if (head.text == "default") {
            Formula prem = declared ? parse_fragment(lx, &kb.vocabulary, nullptr)
                                    : parse_fragment(lx, nullptr, &kb.vocabulary);
            if (lx.peek().kind != Tok::Squig) lx.fail("expected '~>'");
            lx.next();
            Formula conc = declared ? parse_fragment(lx, &kb.vocabulary, nullptr)
                                    : parse_fragment(lx, nullptr, &kb.vocabulary);
            Rat strength{1};
            if (lx.peek().kind == Tok::LBracket) {
                lx.next();
                strength = parse_strength(lx);
            }
            expect_end(lx);
            kb.defaults.push_back(Default{std::move(prem), std::move(conc), std::move(strength)});
        } else if (head.text == "query") {
            Formula f = declared ? parse_fragment(lx, &kb.vocabulary, nullptr)
                                 : parse_fragment(lx, nullptr, &kb.vocabulary);
            expect_end(lx);
            kb.queries.push_back(std::move(f));
        } else {
            throw ParseError("unknown directive '" + head.text + "'", head.line, head.col);
        }
    }

    if (kb.vocabulary.size() > static_cast<std::size_t>(atom_limit))
        throw VocabularyTooLarge(kb.vocabulary.size(), static_cast<std::size_t>(atom_limit));
    return kb;
}

std::string to_dkb(const KnowledgeBase& kb) {
    std::ostringstream os;
    if (kb.vocabulary.size() > 0) {
        os << "atoms";
        for (const Atom& a : kb.vocabulary.atoms()) os << ' ' << a.name;
        os << '\n';
    }
    for (const Formula& f : kb.facts) os << "fact " << to_string(f) << '\n';
    for (const Default& d : kb.defaults) {
        os << "default " << to_string(d.premise) << " ~> " << to_string(d.conclusion);
        if (d.strength != 1) os << " [" << rat_str(d.strength) << "]";
        os << '\n';
    }
    for (const Formula& f : kb.queries) os << "query " << to_string(f) << '\n';
    return os.str();
}

Formula fact_formula(const KnowledgeBase& kb) {
    if (kb.facts.empty()) return Formula::top();
    Formula f = kb.facts.front();
    for (std::size_t i = 1; i < kb.facts.size(); ++i) f = f & kb.facts[i];
    return f;
}

}  // namespace dkb
