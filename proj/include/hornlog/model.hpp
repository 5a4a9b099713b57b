#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hornlog/term.hpp"

namespace hornlog {

/// A flat predicate: a name applied to zero or more terms.
class Predicate {
public:
    explicit Predicate(std::string name, std::vector<Term> args = {});

    const std::string& name() const noexcept { return name_; }
    const std::vector<Term>& args() const noexcept { return args_; }
    std::size_t arity() const noexcept { return args_.size(); }

    friend bool operator==(const Predicate& a, const Predicate& b);
    friend bool operator!=(const Predicate& a, const Predicate& b) { return !(a == b); }

private:
    std::string name_;
    std::vector<Term> args_;
};

/// A rule body: a binary tree of AND / OR nodes over predicate goals.
/// Instances are immutable values; copies share structure.
class Relation {
public:
    enum class Kind { Goal, And, Or };

    static Relation goal(Predicate predicate);
    static Relation conjunction(Relation left, Relation right);
    static Relation disjunction(Relation left, Relation right);

    Kind kind() const noexcept;
    bool is_goal() const noexcept { return kind() == Kind::Goal; }

    /// The predicate of a Goal node. Throws std::logic_error elsewhere.
    const Predicate& predicate() const;

    /// Left / right operand. On a Goal node both return the node itself,
    /// so first_member(g).predicate() == g.predicate().
    const Relation& first_member() const;
    const Relation& second_member() const;

    friend bool operator==(const Relation& a, const Relation& b);
    friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }

private:
    struct Node;
    explicit Relation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Right-nested conjunction of one or more goals: [a, b, c] -> And(a, And(b, c)).
Relation conjoin(const std::vector<Relation>& members);
/// Right-nested disjunction of one or more goals.
Relation disjoin(const std::vector<Relation>& members);

/// A Horn clause: head predicate with an optional body. A bodiless rule is a
/// fact.
class Rule {
public:
    explicit Rule(Predicate head);
    Rule(Predicate head, Relation body);

    const Predicate& head() const noexcept { return head_; }
    const std::optional<Relation>& body() const noexcept { return body_; }
    bool is_fact() const noexcept { return !body_.has_value(); }

    friend bool operator==(const Rule& a, const Rule& b);
    friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }

private:
    Predicate head_;
    std::optional<Relation> body_;
};

bool is_fact(const Rule& rule) noexcept;

/// An ordered collection of rules. Order is meaningful: the engine scans it
/// top to bottom. Immutable after construction; duplicates are preserved.
class KnowledgeBase {
public:
    KnowledgeBase() = default;
    explicit KnowledgeBase(std::vector<Rule> rules) : rules_(std::move(rules)) {}

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }

    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b);
    friend bool operator!=(const KnowledgeBase& a, const KnowledgeBase& b) { return !(a == b); }

private:
    std::vector<Rule> rules_;
};

} // namespace hornlog
