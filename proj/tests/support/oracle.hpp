#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hornlog/dsl.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/model.hpp"

// Brute-force reference implementations the engine is checked against. All of
// them require ground facts and range-restricted rules (every head variable
// occurs in each body disjunct).
namespace testsupport {

using hornlog::ConstantValue;
using hornlog::KnowledgeBase;
using hornlog::Predicate;
using hornlog::Relation;
using hornlog::Rule;
using hornlog::Term;

// Body flattened to disjunctive normal form: alternatives of goal lists.
inline std::vector<std::vector<Predicate>> dnf(const Relation& rel) {
    switch (rel.kind()) {
    case Relation::Kind::Goal:
        return {{rel.predicate()}};
    case Relation::Kind::And: {
        auto left = dnf(rel.first_member());
        auto right = dnf(rel.second_member());
        std::vector<std::vector<Predicate>> out;
        for (const auto& l : left)
            for (const auto& r : right) {
                std::vector<Predicate> joined = l;
                joined.insert(joined.end(), r.begin(), r.end());
                out.push_back(std::move(joined));
            }
        return out;
    }
    case Relation::Kind::Or: {
        auto out = dnf(rel.first_member());
        auto right = dnf(rel.second_member());
        out.insert(out.end(), right.begin(), right.end());
        return out;
    }
    }
    return {};
}

using Env = std::map<std::string, ConstantValue>;

// Matches one goal against one ground fact under an environment; returns the
// extended environment on success.
inline std::optional<Env> match_goal(const Predicate& goal, const Predicate& fact, Env env) {
    if (goal.name() != fact.name() || goal.arity() != fact.arity())
        return std::nullopt;
    for (std::size_t i = 0; i < goal.arity(); ++i) {
        const Term& g = goal.args()[i];
        const ConstantValue& f = fact.args()[i].constant();
        if (g.is_constant()) {
            if (g.constant() != f)
                return std::nullopt;
            continue;
        }
        auto [it, inserted] = env.emplace(g.variable().name(), f);
        if (!inserted && it->second != f)
            return std::nullopt;
    }
    return env;
}

inline void solve_conjunction(const std::vector<Predicate>& goals, std::size_t index,
                              const std::vector<Predicate>& facts, const Env& env,
                              std::vector<Env>& out) {
    if (index == goals.size()) {
        out.push_back(env);
        return;
    }
    for (const Predicate& fact : facts)
        if (auto next = match_goal(goals[index], fact, env))
            solve_conjunction(goals, index + 1, facts, *next, out);
}

// Naive forward chaining to fixpoint over the knowledge base's ground facts.
inline std::vector<Predicate> forward_chain(const KnowledgeBase& kb) {
    std::vector<Predicate> facts;
    std::set<std::string> keys;
    auto add = [&](const Predicate& p) {
        if (!keys.insert(hornlog::render_predicate(p)).second)
            return false;
        facts.push_back(p);
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Predicate> derived;
        for (const Rule& rule : kb.rules()) {
            if (rule.is_fact()) {
                derived.push_back(rule.head());
                continue;
            }
            for (const auto& goals : dnf(*rule.body())) {
                std::vector<Env> envs;
                solve_conjunction(goals, 0, facts, {}, envs);
                for (const Env& env : envs) {
                    std::vector<Term> args;
                    args.reserve(rule.head().arity());
                    for (const Term& t : rule.head().args())
                        args.push_back(t.is_constant() ? t
                                                       : Term(env.at(t.variable().name())));
                    derived.emplace_back(rule.head().name(), std::move(args));
                }
            }
        }
        for (const Predicate& p : derived)
            if (add(p))
                changed = true;
    }
    return facts;
}

// Canonical answer key: query variables sorted by name, rendered values.
inline std::string answer_key(const std::vector<std::pair<std::string, Term>>& entries) {
    std::map<std::string, std::string> sorted;
    for (const auto& [name, value] : entries)
        sorted[name] = hornlog::render_term(value);
    std::string key;
    for (const auto& [name, value] : sorted)
        key += name + "=" + value + "|";
    return key;
}

// The oracle's answer set for a query over the derived fact set.
inline std::set<std::string> oracle_answers(const std::vector<Predicate>& facts,
                                            const Predicate& query) {
    std::set<std::string> out;
    for (const Predicate& fact : facts) {
        if (auto env = match_goal(query, fact, {})) {
            std::vector<std::pair<std::string, Term>> entries;
            for (const auto& [name, value] : *env)
                entries.emplace_back(name, Term(value));
            out.insert(answer_key(entries));
        }
    }
    return out;
}

// The engine's answer set in the same canonical form.
inline std::set<std::string> engine_answers(const KnowledgeBase& kb, const Predicate& query) {
    std::set<std::string> out;
    for (const hornlog::ResultSet& rs : hornlog::query(kb, query).result_sets)
        out.insert(answer_key(rs.entries()));
    return out;
}

} // namespace testsupport
