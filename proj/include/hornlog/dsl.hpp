#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hornlog/model.hpp"

namespace hornlog {

/// 1-based source position of a token or error, with its byte length.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;

    friend bool operator==(const SourceSpan& a, const SourceSpan& b) {
        return a.line == b.line && a.column == b.column && a.length == b.length;
    }
};

struct ParseError {
    SourceSpan span;
    std::string message;                // never empty
    std::vector<std::string> expected;  // token descriptions, may be empty
};

using ProgramParseResult = std::variant<KnowledgeBase, std::vector<ParseError>>;
using QueryParseResult = std::variant<Predicate, ParseError>;

/// Parses a program: clauses `head.` / `head :- body.` with `,` binding
/// tighter than `;`, `%` line comments, and `_` fresh per occurrence. On bad
/// input, parsing resumes at the next `.` so one pass reports every error.
ProgramParseResult parse_program(std::string_view source);

/// Parses a single query: one predicate, optionally prefixed with `?-`,
/// terminated by `.`. Top-level `,` or `;` is rejected.
QueryParseResult parse_query(std::string_view source);

/// Canonical one-clause-per-line rendering. parse_program(format_program(kb))
/// rebuilds kb exactly, and formatting is a fixpoint: formatting the reparse
/// yields byte-identical text.
std::string format_program(const KnowledgeBase& kb);

// Shared term rendering in DSL syntax (texts quoted and escaped, symbols and
// variables bare).
std::string render_constant(const ConstantValue& value);
std::string render_term(const Term& term);
std::string render_predicate(const Predicate& predicate);

} // namespace hornlog
