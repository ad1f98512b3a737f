#include "sequiv/parser.hpp"

#include <cctype>
#include <sstream>

namespace sequiv {

namespace {

enum class Tok {
    Ident,      // lowercase-initial
    Variable,   // uppercase-initial
    Numeral,
    HashWord,   // #inf, #sup, #count, ...
    Dot,
    DotDot,
    Comma,
    Semicolon,
    If,         // :-
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

struct LexFail {
    ParseError error;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> tokens;
        for (;;) {
            skip_trivia();
            if (pos_ >= text_.size()) {
                tokens.push_back({Tok::End, "", here(0)});
                return tokens;
            }
            tokens.push_back(next());
        }
    }

private:
    void skip_trivia()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            }
            else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            }
            else {
                break;
            }
        }
    }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        }
        else {
            ++column_;
        }
        ++pos_;
    }

    SourceSpan here(std::size_t len) const { return {pos_, pos_ + len, line_, column_}; }

    Token make(Tok kind, std::size_t len)
    {
        Token t{kind, std::string(text_.substr(pos_, len)), here(len)};
        for (std::size_t i = 0; i < len; ++i) {
            advance();
        }
        return t;
    }

    [[noreturn]] void fail(std::string message, std::string expected = {})
    {
        throw LexFail{{here(1), std::move(message), std::move(expected)}};
    }

    Token next()
    {
        const char c = text_[pos_];
        if (c == '_') {
            fail("identifiers starting with '_' are not supported");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (pos_ + len < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_ + len]))) {
                ++len;
            }
            return make(Tok::Numeral, len);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (pos_ + len < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_ + len])) ||
                    text_[pos_ + len] == '_')) {
                ++len;
            }
            return make(std::isupper(static_cast<unsigned char>(c)) ? Tok::Variable : Tok::Ident,
                        len);
        }
        if (c == '#') {
            std::size_t len = 1;
            while (pos_ + len < text_.size() &&
                   std::isalpha(static_cast<unsigned char>(text_[pos_ + len]))) {
                ++len;
            }
            if (len == 1) {
                fail("stray '#'");
            }
            return make(Tok::HashWord, len);
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two(':', '-')) {
            return make(Tok::If, 2);
        }
        if (two('.', '.')) {
            return make(Tok::DotDot, 2);
        }
        if (two('!', '=')) {
            return make(Tok::Ne, 2);
        }
        if (two('<', '=')) {
            return make(Tok::Le, 2);
        }
        if (two('>', '=')) {
            return make(Tok::Ge, 2);
        }
        switch (c) {
            case '.': return make(Tok::Dot, 1);
            case ',': return make(Tok::Comma, 1);
            case ';': return make(Tok::Semicolon, 1);
            case '(': return make(Tok::LParen, 1);
            case ')': return make(Tok::RParen, 1);
            case '{': return make(Tok::LBrace, 1);
            case '}': return make(Tok::RBrace, 1);
            case '=': return make(Tok::Eq, 1);
            case '<': return make(Tok::Lt, 1);
            case '>': return make(Tok::Gt, 1);
            case '+': return make(Tok::Plus, 1);
            case '-': return make(Tok::Minus, 1);
            case '*': return make(Tok::Star, 1);
            case '/': return make(Tok::Slash, 1);
            case '\\': return make(Tok::Backslash, 1);
            default: break;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

bool ends_with(const std::string &s, const std::string &suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program program()
    {
        std::vector<Rule> rules;
        while (!at(Tok::End)) {
            rules.push_back(rule());
            expect(Tok::Dot, "'.' terminating the rule");
        }
        return make_program(std::move(rules));
    }

    TermPtr single_term()
    {
        auto t = term();
        if (!at(Tok::End)) {
            fail("trailing input after term", "end of input");
        }
        return t;
    }

    std::vector<ParseWarning> take_warnings() { return std::move(warnings_); }

private:
    const Token &peek(std::size_t ahead = 0) const
    {
        const std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    bool at(Tok kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }

    Token take()
    {
        Token t = peek();
        if (t.kind != Tok::End) {
            ++pos_;
        }
        return t;
    }

    Token expect(Tok kind, std::string expected)
    {
        if (!at(kind)) {
            if (at(Tok::End)) {
                fail("unterminated rule", std::move(expected));
            }
            fail("unexpected '" + peek().text + "'", std::move(expected));
        }
        return take();
    }

    [[noreturn]] void fail(std::string message, std::string expected = {})
    {
        throw LexFail{{peek().span, std::move(message), std::move(expected)}};
    }

    void warn(const SourceSpan &span, std::string message)
    {
        warnings_.push_back({span, std::move(message)});
    }

    bool is_keyword(const char *kw, std::size_t ahead = 0) const
    {
        return at(Tok::Ident, ahead) && peek(ahead).text == kw;
    }

    void reject_aggregate_words()
    {
        if (at(Tok::HashWord)) {
            const auto &t = peek();
            if (t.text != "#inf" && t.text != "#sup") {
                fail("'" + t.text + "' is not supported");
            }
        }
    }

    // ---- rules -----------------------------------------------------------

    Rule rule()
    {
        Rule r;
        reject_aggregate_words();
        if (at(Tok::Numeral) && at(Tok::LBrace, 1)) {
            fail("cardinality bounds on choice rules are not supported");
        }
        if (at(Tok::If)) {
            take();
            r.head = Head{Head::Kind::Empty, std::nullopt};
            r.body = body();
            return r;
        }
        r.head = head();
        if (at(Tok::If)) {
            take();
            r.body = body();
        }
        return r;
    }

    Head head()
    {
        if (at(Tok::LBrace)) {
            take();
            if (at(Tok::RBrace)) {
                fail("empty choice '{}' is not supported");
            }
            Atom a = parse_atom();
            if (at(Tok::Semicolon) || at(Tok::Comma)) {
                fail("choice rules with more than one atom are not supported");
            }
            expect(Tok::RBrace, "'}'");
            return Head{Head::Kind::Choice, std::move(a)};
        }
        return Head{Head::Kind::Basic, parse_atom()};
    }

    std::vector<BodyLiteral> body()
    {
        std::vector<BodyLiteral> lits;
        lits.push_back(literal());
        while (at(Tok::Comma)) {
            take();
            lits.push_back(literal());
        }
        return lits;
    }

    BodyLiteral literal()
    {
        reject_aggregate_words();
        if (is_keyword("not") && !comparison_follows_keyword()) {
            take();
            LiteralSign sign = LiteralSign::Negated;
            if (is_keyword("not")) {
                take();
                sign = LiteralSign::DoublyNegated;
            }
            return BodyAtomLiteral{sign, parse_atom()};
        }
        if (is_keyword("not")) {
            fail("negated comparisons are not supported");
        }
        // An atom with arguments is recognised by "ident (".
        if ((at(Tok::Ident) || at(Tok::Variable)) && at(Tok::LParen, 1) && !is_keyword("not")) {
            Atom a = parse_atom();
            if (relation().has_value()) {
                fail("atoms cannot appear in comparisons");
            }
            return BodyAtomLiteral{LiteralSign::Positive, std::move(a)};
        }
        // Otherwise parse a term; a following relation makes it a comparison.
        const Token start = peek();
        TermPtr left = comparison_term();
        if (auto rel = relation()) {
            take();
            TermPtr right = comparison_term();
            return BodyComparison{*rel, std::move(left), std::move(right)};
        }
        if (const auto *sc = std::get_if<SymbolicConstant>(&left->node)) {
            return BodyAtomLiteral{LiteralSign::Positive, Atom{sc->name, {{}}}};
        }
        throw LexFail{{start.span, "expected an atom or a comparison", "atom or comparison"}};
    }

    // "not" directly before a comparison ("not X = Y") has no translation.
    bool comparison_follows_keyword() const
    {
        // After "not", an atom always starts with an identifier that is not
        // immediately part of a comparison.
        if (!(at(Tok::Ident, 1) || at(Tok::Variable, 1))) {
            return true;
        }
        if (at(Tok::LParen, 2)) {
            return false;
        }
        switch (peek(2).kind) {
            case Tok::Eq:
            case Tok::Ne:
            case Tok::Lt:
            case Tok::Gt:
            case Tok::Le:
            case Tok::Ge: return true;
            default: return false;
        }
    }

    std::optional<Rel> relation() const
    {
        switch (peek().kind) {
            case Tok::Eq: return Rel::Eq;
            case Tok::Ne: return Rel::Ne;
            case Tok::Lt: return Rel::Lt;
            case Tok::Gt: return Rel::Gt;
            case Tok::Le: return Rel::Le;
            case Tok::Ge: return Rel::Ge;
            default: return std::nullopt;
        }
    }

    // ---- atoms -----------------------------------------------------------

    std::string predicate_name()
    {
        if (at(Tok::Variable) && at(Tok::LParen, 1)) {
            Token t = take();
            std::string name = t.text;
            name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
            warn(t.span, "capitalised predicate '" + t.text + "' read as '" + name + "'");
            return name;
        }
        Token t = expect(Tok::Ident, "predicate name");
        if (t.text == "not") {
            throw LexFail{{t.span, "'not' is not a predicate name", "predicate name"}};
        }
        check_reserved(t);
        return t.text;
    }

    void check_reserved(const Token &t)
    {
        if (ends_with(t.text, "__prime__")) {
            throw LexFail{
                {t.span, "'" + t.text + "' uses the reserved suffix '__prime__'", "identifier"}};
        }
    }

    Atom parse_atom()
    {
        Atom a;
        a.predicate = predicate_name();
        a.alternatives = {{}};
        if (!at(Tok::LParen)) {
            return a;
        }
        take();
        if (at(Tok::RParen)) {
            fail("expected a term", "term");
        }
        std::vector<std::vector<TermPtr>> alts;
        std::vector<TermPtr> current;
        current.push_back(argument_term());
        for (;;) {
            if (at(Tok::Comma)) {
                take();
                current.push_back(argument_term());
            }
            else if (at(Tok::Semicolon)) {
                take();
                alts.push_back(std::move(current));
                current.clear();
                current.push_back(argument_term());
            }
            else {
                break;
            }
        }
        alts.push_back(std::move(current));
        expect(Tok::RParen, "')'");
        a.alternatives = std::move(alts);
        if (a.pooled()) {
            std::size_t arity = a.alternatives.front().size();
            for (const auto &alt : a.alternatives) {
                if (alt.size() != arity) {
                    warn(peek().span, "pooled atom '" + a.predicate +
                                          "' mixes alternatives of different arity");
                    break;
                }
            }
        }
        return a;
    }

    // ---- terms -----------------------------------------------------------
    //
    // term           := interval { ";" interval }      (public entry only)
    // interval       := additive [ ".." additive ]
    // additive       := multiplicative { ("+"|"-") multiplicative }
    // multiplicative := unary { ("*"|"/"|"\") unary }
    // unary          := "-" unary | primary
    //
    // Atom arguments and comparison operands parse at interval level, so a
    // top-level ";" in "p(a;b)" builds a pooled atom while "p((a;b))" is an
    // ordinary atom with one pool argument.

    TermPtr term()
    {
        std::vector<TermPtr> alts;
        alts.push_back(interval_term());
        while (at(Tok::Semicolon)) {
            take();
            alts.push_back(interval_term());
        }
        return pool(std::move(alts));
    }

    TermPtr argument_term() { return interval_term(); }
    TermPtr comparison_term() { return interval_term(); }

    TermPtr interval_term()
    {
        TermPtr lo = additive();
        if (!at(Tok::DotDot)) {
            return lo;
        }
        take();
        TermPtr hi = additive();
        if (at(Tok::DotDot)) {
            fail("chained '..' is not supported");
        }
        return interval(std::move(lo), std::move(hi));
    }

    TermPtr additive()
    {
        TermPtr t = multiplicative();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            const ArithOp op = take().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
            t = arith(op, std::move(t), multiplicative());
        }
        return t;
    }

    TermPtr multiplicative()
    {
        TermPtr t = unary();
        while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Backslash)) {
            const Tok k = take().kind;
            const ArithOp op = k == Tok::Star    ? ArithOp::Mul
                               : k == Tok::Slash ? ArithOp::Div
                                                 : ArithOp::Mod;
            t = arith(op, std::move(t), unary());
        }
        return t;
    }

    TermPtr unary()
    {
        if (at(Tok::Minus)) {
            take();
            // Unary minus reads as 0 - t.
            return arith(ArithOp::Sub, numeral(0), unary());
        }
        return primary();
    }

    TermPtr primary()
    {
        reject_aggregate_words();
        if (at(Tok::Numeral)) {
            return numeral(std::stoll(take().text));
        }
        if (at(Tok::HashWord)) {
            const Token t = take();
            return t.text == "#inf" ? infimum() : supremum();
        }
        if (at(Tok::Ident)) {
            Token t = take();
            if (t.text == "not") {
                throw LexFail{{t.span, "'not' cannot appear inside a term", "term"}};
            }
            check_reserved(t);
            return symbolic_constant(t.text);
        }
        if (at(Tok::Variable)) {
            return program_variable(take().text);
        }
        if (at(Tok::LParen)) {
            take();
            if (at(Tok::RParen)) {
                fail("expected a term", "term");
            }
            // Inside parentheses "," builds tuples and ";" separates pool
            // alternatives: (a, b; c) is the pool of the tuple (a, b) and c.
            std::vector<TermPtr> alts;
            std::vector<TermPtr> elems;
            elems.push_back(interval_term());
            for (;;) {
                if (at(Tok::Comma)) {
                    take();
                    elems.push_back(interval_term());
                }
                else if (at(Tok::Semicolon)) {
                    take();
                    alts.push_back(make_tuple_strict(std::move(elems)));
                    elems.clear();
                    elems.push_back(interval_term());
                }
                else {
                    break;
                }
            }
            alts.push_back(make_tuple_strict(std::move(elems)));
            expect(Tok::RParen, "')'");
            return pool(std::move(alts));
        }
        fail("expected a term", "term");
    }

    TermPtr make_tuple_strict(std::vector<TermPtr> elems) { return tuple(std::move(elems)); }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<ParseWarning> warnings_;
};

} // namespace

ParseResult<Program> parse_program(std::string_view text)
{
    ParseResult<Program> result;
    try {
        Parser p{Lexer{text}.run()};
        result.value = p.program();
        result.warnings = p.take_warnings();
    }
    catch (const LexFail &f) {
        result.error = f.error;
    }
    return result;
}

ParseResult<TermPtr> parse_term(std::string_view text)
{
    ParseResult<TermPtr> result;
    try {
        Parser p{Lexer{text}.run()};
        result.value = p.single_term();
        result.warnings = p.take_warnings();
    }
    catch (const LexFail &f) {
        result.error = f.error;
    }
    return result;
}

std::string format_error(const ParseError &error, std::string_view file)
{
    std::ostringstream os;
    if (!file.empty()) {
        os << file << ":";
    }
    os << error.span.line << ":" << error.span.column << ": error: " << error.message;
    if (!error.expected.empty()) {
        os << " (expected " << error.expected << ")";
    }
    return os.str();
}

} // namespace sequiv
