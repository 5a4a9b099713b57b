#include "hornlog/model.hpp"

#include <stdexcept>

namespace hornlog {

Predicate::Predicate(std::string name, std::vector<Term> args)
    : name_(std::move(name)), args_(std::move(args)) {
    if (name_.empty())
        throw std::invalid_argument("predicate name must be non-empty");
}

bool operator==(const Predicate& a, const Predicate& b) {
    return a.name_ == b.name_ && a.args_ == b.args_;
}

struct Relation::Node {
    Kind kind;
    std::optional<Predicate> predicate; // Goal only
    std::optional<Relation> left;       // And / Or only
    std::optional<Relation> right;
};

Relation Relation::goal(Predicate predicate) {
    auto node = std::make_shared<Node>(Node{Kind::Goal, std::move(predicate), {}, {}});
    return Relation(std::move(node));
}

Relation Relation::conjunction(Relation left, Relation right) {
    auto node = std::make_shared<Node>(Node{Kind::And, {}, std::move(left), std::move(right)});
    return Relation(std::move(node));
}

Relation Relation::disjunction(Relation left, Relation right) {
    auto node = std::make_shared<Node>(Node{Kind::Or, {}, std::move(left), std::move(right)});
    return Relation(std::move(node));
}

Relation::Kind Relation::kind() const noexcept {
    return node_->kind;
}

const Predicate& Relation::predicate() const {
    if (node_->kind != Kind::Goal)
        throw std::logic_error("relation is not a goal");
    return *node_->predicate;
}

const Relation& Relation::first_member() const {
    return node_->kind == Kind::Goal ? *this : *node_->left;
}

const Relation& Relation::second_member() const {
    return node_->kind == Kind::Goal ? *this : *node_->right;
}

bool operator==(const Relation& a, const Relation& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    if (a.kind() == Relation::Kind::Goal)
        return a.predicate() == b.predicate();
    return a.first_member() == b.first_member() && a.second_member() == b.second_member();
}

namespace {

Relation fold_right(const std::vector<Relation>& members,
                    Relation (*combine)(Relation, Relation), const char* what) {
    if (members.empty())
        throw std::invalid_argument(std::string(what) + " of an empty goal list");
    Relation result = members.back();
    for (auto it = members.rbegin() + 1; it != members.rend(); ++it)
        result = combine(*it, std::move(result));
    return result;
}

} // namespace

Relation conjoin(const std::vector<Relation>& members) {
    return fold_right(members, &Relation::conjunction, "conjunction");
}

Relation disjoin(const std::vector<Relation>& members) {
    return fold_right(members, &Relation::disjunction, "disjunction");
}

Rule::Rule(Predicate head) : head_(std::move(head)) {}

Rule::Rule(Predicate head, Relation body) : head_(std::move(head)), body_(std::move(body)) {}

bool operator==(const Rule& a, const Rule& b) {
    return a.head_ == b.head_ && a.body_ == b.body_;
}

bool is_fact(const Rule& rule) noexcept {
    return rule.is_fact();
}

bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.rules_ == b.rules_;
}

} // namespace hornlog
