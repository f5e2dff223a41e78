#include "neusv/tl/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "neusv/error.hpp"

namespace neusv::tl {

namespace {

enum class Tok {
    LParen,
    RParen,
    Quoted,
    Word,
    Not,
    Always,
    Eventually,
    Next,
    And,
    Or,
    Until,
    Implies,
    True,
    False,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

const std::unordered_map<std::string_view, Tok>& keywords() {
    static const std::unordered_map<std::string_view, Tok> table = {
        {"AND", Tok::And},         {"OR", Tok::Or},         {"NOT", Tok::Not},
        {"UNTIL", Tok::Until},     {"ALWAYS", Tok::Always}, {"EVENTUALLY", Tok::Eventually},
        {"NEXT", Tok::Next},       {"IMPLIES", Tok::Implies},
        {"U", Tok::Until},         {"G", Tok::Always},      {"F", Tok::Eventually},
        {"X", Tok::Next},          {"TRUE", Tok::True},     {"FALSE", Tok::False},
    };
    return table;
}

constexpr std::string_view kOpenCurly = "\xE2\x80\x9C";
constexpr std::string_view kCloseCurly = "\xE2\x80\x9D";

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= text_.size()) {
                t.kind = Tok::End;
                out.push_back(std::move(t));
                return out;
            }
            char c = text_[pos_];
            if (c == '(') {
                t.kind = Tok::LParen;
                advance(1);
            } else if (c == ')') {
                t.kind = Tok::RParen;
                advance(1);
            } else if (c == '&') {
                t.kind = Tok::And;
                advance(at("&&") ? 2 : 1);
            } else if (c == '|') {
                t.kind = Tok::Or;
                advance(at("||") ? 2 : 1);
            } else if (c == '!') {
                t.kind = Tok::Not;
                advance(1);
            } else if (at("->")) {
                t.kind = Tok::Implies;
                advance(2);
            } else if (c == '"') {
                t.kind = Tok::Quoted;
                t.text = quoted("\"", t);
            } else if (at(kOpenCurly)) {
                t.kind = Tok::Quoted;
                t.text = quoted(kCloseCurly, t);
            } else {
                std::size_t start = pos_;
                while (pos_ < text_.size() && is_word_char()) advance(1);
                if (pos_ == start) {
                    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
                }
                t.text = std::string(text_.substr(start, pos_ - start));
                auto kw = keywords().find(t.text);
                t.kind = kw == keywords().end() ? Tok::Word : kw->second;
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(text_[pos_++]);
            if (c == '\n') {
                ++line_;
                column_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++column_;
            }
        }
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }

    bool is_word_char() const {
        unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (std::isspace(c)) return false;
        switch (c) {
        case '(': case ')': case '"': case '&': case '|': case '!': return false;
        case '-': return !at("->");
        default: break;
        }
        return !at(kOpenCurly) && !at(kCloseCurly);
    }

    std::string quoted(std::string_view close, const Token& start) {
        advance(close == "\"" ? 1 : kOpenCurly.size());
        std::string out;
        for (;;) {
            if (pos_ >= text_.size()) throw ParseError("unterminated quoted atom", start.line, start.column);
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                out.push_back(text_[pos_ + 1]);
                advance(2);
                continue;
            }
            if (at(close)) {
                advance(close.size());
                return out;
            }
            out.push_back(text_[pos_]);
            advance(1);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct BinaryInfo {
    Op op;
    int precedence;
    bool right_assoc;
};

std::optional<BinaryInfo> binary_info(Tok t) {
    switch (t) {
    case Tok::Implies: return BinaryInfo{Op::Implies, 1, true};
    case Tok::Or: return BinaryInfo{Op::Or, 2, false};
    case Tok::And: return BinaryInfo{Op::And, 3, false};
    case Tok::Until: return BinaryInfo{Op::Until, 4, false};
    default: return std::nullopt;
    }
}

std::optional<Op> unary_op(Tok t) {
    switch (t) {
    case Tok::Not: return Op::Not;
    case Tok::Always: return Op::Always;
    case Tok::Eventually: return Op::Eventually;
    case Tok::Next: return Op::Next;
    default: return std::nullopt;
    }
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Quoted: return "\"" + t.text + "\"";
    default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    Parser(std::vector<Token> tokens, const PropositionSet& props)
        : tokens_(std::move(tokens)), props_(props) {}

    ParsedSpecification run() {
        Formula f = expression(0);
        if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
        return ParsedSpecification{std::move(f), std::move(atoms_)};
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().column);
    }

    Formula expression(int min_precedence) {
        Formula lhs = unary();
        for (;;) {
            auto info = binary_info(peek().kind);
            if (!info || info->precedence < min_precedence) return lhs;
            take();
            Formula rhs = expression(info->right_assoc ? info->precedence : info->precedence + 1);
            lhs = Formula::make(info->op, std::move(lhs), std::move(rhs));
        }
    }

    Formula unary() {
        if (auto op = unary_op(peek().kind)) {
            take();
            return Formula::make(*op, unary());
        }
        return primary();
    }

    Formula primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::LParen: {
            take();
            Formula inner = expression(0);
            if (peek().kind != Tok::RParen) fail("expected ')' but found " + describe(peek()));
            take();
            return inner;
        }
        case Tok::True: take(); return Formula::top();
        case Tok::False: take(); return Formula::bottom();
        case Tok::Quoted: {
            std::string phrase = take().text;
            return resolve(phrase, t);
        }
        case Tok::Word: {
            const Token& first = t;
            std::string phrase = take().text;
            while (peek().kind == Tok::Word) {
                phrase.push_back(' ');
                phrase += take().text;
            }
            return resolve(phrase, first);
        }
        default: fail("expected an atom or '(' but found " + describe(t));
        }
    }

    Formula resolve(const std::string& phrase, const Token& at) {
        std::string id;
        try {
            id = normalize_id(phrase);
        } catch (const Error&) {
            throw ParseError("atom \"" + phrase + "\" is empty after normalization", at.line, at.column);
        }
        if (!props_.empty()) {
            auto idx = props_.index_of(id);
            if (!idx) {
                throw Error(ErrorCode::UnknownAtom,
                            "unknown atomic proposition \"" + phrase + "\" (normalized '" + id + "')");
            }
            atoms_.add(props_[*idx]);
        } else {
            atoms_.add(Proposition{id, phrase});
        }
        return Formula::atom(std::move(id));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const PropositionSet& props_;
    PropositionSet atoms_;
};

} // namespace

ParsedSpecification parse_specification(std::string_view text, const PropositionSet& props) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        throw Error(ErrorCode::EmptyFormula, "specification is empty");
    }
    return Parser(Lexer(text).run(), props).run();
}

Formula parse_formula(std::string_view text, const PropositionSet& props) {
    return parse_specification(text, props).formula;
}

} // namespace neusv::tl
