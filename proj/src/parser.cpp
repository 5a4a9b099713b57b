#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "hornlog/dsl.hpp"

namespace hornlog {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokKind {
    Atom, Var, Str, Int,
    LParen, RParen, Comma, Semi, Dot,
    Implies,   // :-
    QueryMark, // ?-
    End,
    Bad, // lexical error; text carries the message
};

struct Token {
    TokKind kind;
    std::string text;
    std::int64_t int_value = 0;
    SourceSpan span;
};

const char* describe(TokKind kind) {
    switch (kind) {
    case TokKind::Atom: return "atom";
    case TokKind::Var: return "variable";
    case TokKind::Str: return "string";
    case TokKind::Int: return "integer";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::Comma: return "','";
    case TokKind::Semi: return "';'";
    case TokKind::Dot: return "'.'";
    case TokKind::Implies: return "':-'";
    case TokKind::QueryMark: return "'?-'";
    case TokKind::End: return "end of input";
    case TokKind::Bad: return "invalid token";
    }
    return "token";
}

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_';
}

bool is_ident_char(unsigned char c) {
    return std::isalnum(c) || c == '_';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        int line = line_, col = col_;
        if (pos_ >= src_.size())
            return token(TokKind::End, "", line, col, 0);

        char c = src_[pos_];
        if (c == '(') return punct(TokKind::LParen, line, col);
        if (c == ')') return punct(TokKind::RParen, line, col);
        if (c == ',') return punct(TokKind::Comma, line, col);
        if (c == ';') return punct(TokKind::Semi, line, col);
        if (c == '.') return punct(TokKind::Dot, line, col);
        if (c == ':') {
            if (peek(1) == '-') {
                advance(); advance();
                return token(TokKind::Implies, ":-", line, col, 2);
            }
            advance();
            return bad("expected ':-' after ':'", line, col, 1);
        }
        if (c == '?') {
            if (peek(1) == '-') {
                advance(); advance();
                return token(TokKind::QueryMark, "?-", line, col, 2);
            }
            advance();
            return bad("expected '?-' after '?'", line, col, 1);
        }
        if (c == '"')
            return lex_string(line, col);
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)))))
            return lex_integer(line, col);
        if (is_ident_start(static_cast<unsigned char>(c)))
            return lex_identifier(line, col);
        advance();
        return bad(std::string("unexpected character '") + c + "'", line, col, 1);
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (pos_ >= src_.size())
            return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token token(TokKind kind, std::string text, int line, int col, int length) {
        return Token{kind, std::move(text), 0, SourceSpan{line, col, length}};
    }

    Token bad(std::string message, int line, int col, int length) {
        return token(TokKind::Bad, std::move(message), line, col, length);
    }

    Token punct(TokKind kind, int line, int col) {
        std::string text(1, src_[pos_]);
        advance();
        return token(kind, std::move(text), line, col, 1);
    }

    Token lex_identifier(int line, int col) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_])))
            advance();
        std::string text(src_.substr(start, pos_ - start));
        char first = text[0];
        TokKind kind =
            (first == '_' || std::isupper(static_cast<unsigned char>(first))) ? TokKind::Var
                                                                              : TokKind::Atom;
        return token(kind, std::move(text), line, col, static_cast<int>(text.size()));
    }

    Token lex_integer(int line, int col) {
        std::size_t start = pos_;
        if (src_[pos_] == '-')
            advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            advance();
        std::string text(src_.substr(start, pos_ - start));
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size())
            return bad("integer literal out of range: " + text, line, col,
                       static_cast<int>(text.size()));
        Token t = token(TokKind::Int, std::move(text), line, col,
                        static_cast<int>(pos_ - start));
        t.int_value = value;
        return t;
    }

    Token lex_string(int line, int col) {
        std::size_t start = pos_;
        advance(); // opening quote
        std::string value;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '"') {
                advance();
                Token t = token(TokKind::Str, std::move(value), line, col,
                                static_cast<int>(pos_ - start));
                return t;
            }
            if (c == '\n')
                break;
            if (c == '\\') {
                int esc_line = line_, esc_col = col_;
                advance();
                char e = pos_ < src_.size() ? src_[pos_] : '\0';
                switch (e) {
                case '"': value += '"'; break;
                case '\\': value += '\\'; break;
                case 'n': value += '\n'; break;
                case 't': value += '\t'; break;
                default:
                    advance();
                    return bad(std::string("invalid escape sequence '\\") + e + "' in string",
                               esc_line, esc_col, 2);
                }
                advance();
            } else {
                value += c;
                advance();
            }
        }
        return bad("unterminated string literal", line, col, static_cast<int>(pos_ - start));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct SyntaxError {
    ParseError error;
};

[[noreturn]] void fail(const Token& at, std::string message, std::vector<std::string> expected = {}) {
    throw SyntaxError{ParseError{at.span, std::move(message), std::move(expected)}};
}

[[noreturn]] void fail_expected(const Token& at, const std::string& what,
                                std::vector<std::string> expected) {
    fail(at, "expected " + what + ", found " + describe(at.kind), std::move(expected));
}

// Placeholder names for `_` occurrences; the leading NUL keeps them disjoint
// from anything a clause can spell. They are renamed to _G1, _G2, ... once
// the clause's explicit variable names are all known.
std::string anon_placeholder(int index) {
    return std::string(1, '\0') + "anon" + std::to_string(index);
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { current_ = lexer_.next(); }

    ProgramParseResult parse_program() {
        std::vector<Rule> rules;
        std::vector<ParseError> errors;
        while (current_.kind != TokKind::End) {
            try {
                rules.push_back(parse_clause());
            } catch (const SyntaxError& e) {
                errors.push_back(e.error);
                synchronize();
            }
        }
        if (!errors.empty())
            return errors;
        return KnowledgeBase(std::move(rules));
    }

    QueryParseResult parse_query() {
        try {
            begin_clause();
            require_good();
            if (current_.kind == TokKind::QueryMark)
                shift();
            Predicate goal = parse_predicate();
            if (current_.kind == TokKind::Comma || current_.kind == TokKind::Semi)
                fail(current_, "compound query not supported: a query is a single predicate");
            expect(TokKind::Dot, "'.' at the end of the query");
            if (current_.kind != TokKind::End)
                fail(current_, "unexpected input after the query terminator");
            return finish_predicate(goal);
        } catch (const SyntaxError& e) {
            return e.error;
        }
    }

private:
    void shift() {
        current_ = lexer_.next();
        if (current_.kind == TokKind::Bad)
            fail(current_, current_.text);
    }

    void require_good() {
        if (current_.kind == TokKind::Bad)
            fail(current_, current_.text);
    }

    void expect(TokKind kind, const std::string& what) {
        if (current_.kind != kind)
            fail_expected(current_, what, {describe(kind)});
        shift();
    }

    // Drop tokens through the next '.' so later clauses still get parsed;
    // Bad tokens are skipped rather than reported twice.
    void synchronize() {
        while (current_.kind != TokKind::End) {
            bool was_dot = current_.kind == TokKind::Dot;
            current_ = lexer_.next();
            if (was_dot)
                return;
        }
    }

    void begin_clause() {
        named_vars_.clear();
        explicit_names_.clear();
        anon_count_ = 0;
    }

    Rule parse_clause() {
        begin_clause();
        require_good();
        Predicate head = parse_predicate();
        if (current_.kind == TokKind::Dot) {
            shift();
            return finish_rule(Rule(std::move(head)));
        }
        if (current_.kind == TokKind::Implies) {
            shift();
            Relation body = parse_body();
            expect(TokKind::Dot, "'.' at the end of the clause");
            return finish_rule(Rule(std::move(head), std::move(body)));
        }
        fail_expected(current_, "'.' or ':-' after the clause head",
                      {describe(TokKind::Dot), describe(TokKind::Implies)});
    }

    Relation parse_body() {
        std::vector<Relation> parts{parse_conjunction()};
        while (current_.kind == TokKind::Semi) {
            shift();
            parts.push_back(parse_conjunction());
        }
        return disjoin(parts);
    }

    Relation parse_conjunction() {
        std::vector<Relation> goals{parse_goal()};
        while (current_.kind == TokKind::Comma) {
            shift();
            goals.push_back(parse_goal());
        }
        return conjoin(goals);
    }

    Relation parse_goal() {
        if (current_.kind == TokKind::LParen) {
            shift();
            Relation body = parse_body();
            expect(TokKind::RParen, "')' closing the group");
            return body;
        }
        if (current_.kind == TokKind::Atom)
            return Relation::goal(parse_predicate());
        fail_expected(current_, "a goal",
                      {describe(TokKind::Atom), describe(TokKind::LParen)});
    }

    Predicate parse_predicate() {
        if (current_.kind != TokKind::Atom)
            fail_expected(current_, "a predicate name", {describe(TokKind::Atom)});
        std::string name = current_.text;
        shift();
        std::vector<Term> args;
        if (current_.kind == TokKind::LParen) {
            shift();
            args.push_back(parse_term());
            while (current_.kind == TokKind::Comma) {
                shift();
                args.push_back(parse_term());
            }
            if (current_.kind != TokKind::RParen)
                fail_expected(current_, "',' or ')' in the argument list",
                              {describe(TokKind::Comma), describe(TokKind::RParen)});
            shift();
        }
        return Predicate(std::move(name), std::move(args));
    }

    Term parse_term() {
        switch (current_.kind) {
        case TokKind::Var: {
            std::string name = current_.text;
            shift();
            if (name == "_")
                return Term(Variable(anon_placeholder(++anon_count_)));
            explicit_names_.insert(name);
            auto [it, inserted] = named_vars_.try_emplace(name, Variable(name));
            return Term(it->second);
        }
        case TokKind::Atom: {
            Term t(ConstantValue::symbol(current_.text));
            shift();
            return t;
        }
        case TokKind::Str: {
            Term t(ConstantValue::text(current_.text));
            shift();
            return t;
        }
        case TokKind::Int: {
            Term t(ConstantValue::integer(current_.int_value));
            shift();
            return t;
        }
        default:
            fail_expected(current_, "a term",
                          {describe(TokKind::Var), describe(TokKind::Atom),
                           describe(TokKind::Str), describe(TokKind::Int)});
        }
    }

    // -- anonymous variable naming ------------------------------------------

    std::map<std::string, std::string> anon_names() const {
        std::map<std::string, std::string> renames;
        int next = 1;
        for (int i = 1; i <= anon_count_; ++i) {
            std::string candidate;
            do {
                candidate = "_G" + std::to_string(next++);
            } while (explicit_names_.count(candidate));
            renames[anon_placeholder(i)] = candidate;
        }
        return renames;
    }

    static Term rename_vars(const Term& t, const std::map<std::string, std::string>& renames) {
        if (!t.is_variable())
            return t;
        auto it = renames.find(t.variable().name());
        if (it == renames.end())
            return t;
        return Term(Variable(it->second));
    }

    static Predicate rename_vars(const Predicate& p,
                                 const std::map<std::string, std::string>& renames) {
        std::vector<Term> args;
        args.reserve(p.arity());
        for (const Term& t : p.args())
            args.push_back(rename_vars(t, renames));
        return Predicate(p.name(), std::move(args));
    }

    static Relation rename_vars(const Relation& r,
                                const std::map<std::string, std::string>& renames) {
        switch (r.kind()) {
        case Relation::Kind::Goal:
            return Relation::goal(rename_vars(r.predicate(), renames));
        case Relation::Kind::And:
            return Relation::conjunction(rename_vars(r.first_member(), renames),
                                         rename_vars(r.second_member(), renames));
        case Relation::Kind::Or:
            return Relation::disjunction(rename_vars(r.first_member(), renames),
                                         rename_vars(r.second_member(), renames));
        }
        throw std::logic_error("unreachable relation kind");
    }

    Rule finish_rule(Rule rule) const {
        if (anon_count_ == 0)
            return rule;
        auto renames = anon_names();
        if (rule.is_fact())
            return Rule(rename_vars(rule.head(), renames));
        return Rule(rename_vars(rule.head(), renames), rename_vars(*rule.body(), renames));
    }

    Predicate finish_predicate(const Predicate& p) const {
        if (anon_count_ == 0)
            return p;
        return rename_vars(p, anon_names());
    }

    Lexer lexer_;
    Token current_;
    std::map<std::string, Variable> named_vars_;
    std::set<std::string> explicit_names_;
    int anon_count_ = 0;
};

} // namespace

ProgramParseResult parse_program(std::string_view source) {
    return Parser(source).parse_program();
}

QueryParseResult parse_query(std::string_view source) {
    return Parser(source).parse_query();
}

} // namespace hornlog
