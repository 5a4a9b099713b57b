#include "hornlog/dsl.hpp"

namespace hornlog {

namespace {

void append_escaped(std::string& out, const std::string& text) {
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
}

// Parenthesization keeps the reparse byte-faithful to the tree shape: the
// grammar right-nests both operators and binds ',' tighter than ';', so a
// left-nested child or an Or under an And needs explicit grouping.
bool needs_parens(const Relation& child, Relation::Kind parent, bool is_left) {
    if (child.is_goal())
        return false;
    if (parent == Relation::Kind::And)
        return is_left || child.kind() == Relation::Kind::Or;
    return is_left && child.kind() == Relation::Kind::Or;
}

void render_body(std::string& out, const Relation& relation) {
    if (relation.is_goal()) {
        out += render_predicate(relation.predicate());
        return;
    }
    const char* separator = relation.kind() == Relation::Kind::And ? ", " : " ; ";
    const Relation& left = relation.first_member();
    const Relation& right = relation.second_member();

    bool wrap_left = needs_parens(left, relation.kind(), true);
    if (wrap_left) out += '(';
    render_body(out, left);
    if (wrap_left) out += ')';

    out += separator;

    bool wrap_right = needs_parens(right, relation.kind(), false);
    if (wrap_right) out += '(';
    render_body(out, right);
    if (wrap_right) out += ')';
}

} // namespace

std::string render_constant(const ConstantValue& value) {
    switch (value.kind()) {
    case ConstantKind::Symbol:
        return value.symbol_name();
    case ConstantKind::Text: {
        std::string out = "\"";
        append_escaped(out, value.text());
        out += '"';
        return out;
    }
    case ConstantKind::Integer:
        return std::to_string(value.integer());
    case ConstantKind::Boolean:
        return value.boolean() ? "true" : "false";
    }
    return {};
}

std::string render_term(const Term& term) {
    return term.is_variable() ? term.variable().name() : render_constant(term.constant());
}

std::string render_predicate(const Predicate& predicate) {
    std::string out = predicate.name();
    if (predicate.arity() == 0)
        return out;
    out += '(';
    for (std::size_t i = 0; i < predicate.arity(); ++i) {
        if (i > 0)
            out += ", ";
        out += render_term(predicate.args()[i]);
    }
    out += ')';
    return out;
}

std::string format_program(const KnowledgeBase& kb) {
    std::string out;
    for (const Rule& rule : kb.rules()) {
        out += render_predicate(rule.head());
        if (!rule.is_fact()) {
            out += " :- ";
            render_body(out, *rule.body());
        }
        out += ".\n";
    }
    return out;
}

} // namespace hornlog
