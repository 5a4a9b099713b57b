#include "hornlog/engine.hpp"

#include <algorithm>

#include "hornlog/dsl.hpp"

namespace hornlog {

DepthLimitError::DepthLimitError(std::string goal, int limit)
    : EngineError("depth limit of " + std::to_string(limit) + " exceeded while resolving " + goal),
      goal_(std::move(goal)), limit_(limit) {}

bool contains_processed(const std::vector<ProcessedRecord>& records,
                        const ProcessedRecord& candidate) {
    return std::find(records.begin(), records.end(), candidate) != records.end();
}

void ResultSet::add(std::string name, Term value) {
    entries_.emplace_back(std::move(name), std::move(value));
}

const Term* ResultSet::find(const std::string& name) const {
    for (const auto& [key, value] : entries_)
        if (key == name)
            return &value;
    return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Variable retagging (query tagging and standardize-apart renaming)
// ---------------------------------------------------------------------------

Term retag(const Term& term, const VarScope& scope) {
    if (term.is_variable() && term.variable().scope() == VarScope::user())
        return Term(Variable(term.variable().name(), scope));
    return term;
}

Predicate retag(const Predicate& predicate, const VarScope& scope) {
    std::vector<Term> args;
    args.reserve(predicate.arity());
    for (const Term& t : predicate.args())
        args.push_back(retag(t, scope));
    return Predicate(predicate.name(), std::move(args));
}

Relation retag(const Relation& relation, const VarScope& scope) {
    switch (relation.kind()) {
    case Relation::Kind::Goal:
        return Relation::goal(retag(relation.predicate(), scope));
    case Relation::Kind::And:
        return Relation::conjunction(retag(relation.first_member(), scope),
                                     retag(relation.second_member(), scope));
    case Relation::Kind::Or:
        return Relation::disjunction(retag(relation.first_member(), scope),
                                     retag(relation.second_member(), scope));
    }
    throw std::logic_error("unreachable relation kind");
}

Rule retag(const Rule& rule, const VarScope& scope) {
    if (rule.is_fact())
        return Rule(retag(rule.head(), scope));
    return Rule(retag(rule.head(), scope), retag(*rule.body(), scope));
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

struct EngineState {
    const KnowledgeBase& kb;
    const QueryOptions& options;
    int next_instance_id = 1;
};

using BindingSink = std::function<bool(const BindingSet&)>;

void collect_variables(const Predicate& predicate, std::vector<Variable>& out) {
    for (const Term& t : predicate.args())
        if (t.is_variable())
            out.push_back(t.variable());
}

void collect_variables(const Relation& relation, std::vector<Variable>& out) {
    if (relation.is_goal()) {
        collect_variables(relation.predicate(), out);
        return;
    }
    collect_variables(relation.first_member(), out);
    collect_variables(relation.second_member(), out);
}

std::vector<Variable> visible_variables(const Relation& relation) {
    std::vector<Variable> vars;
    collect_variables(relation, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

std::vector<Term> projection(const std::vector<Variable>& vars, const BindingSet& bindings) {
    std::vector<Term> key;
    key.reserve(vars.size());
    for (const Variable& v : vars)
        key.push_back(values_of(v, bindings));
    return key;
}

// The goal named in a depth error: the leftmost predicate below the relation.
const Predicate& leftmost_goal(const Relation& relation) {
    const Relation* r = &relation;
    while (!r->is_goal())
        r = &r->first_member();
    return r->predicate();
}

bool resolve_node(EngineState& state, const Relation& relation, const BindingSet& bindings,
                  int depth, const BindingSink& sink);

bool resolve_predicate(EngineState& state, const Predicate& goal, const BindingSet& bindings,
                       int depth, const BindingSink& sink) {
    // One record list per goal resolution: a fact may serve this goal only
    // once, while identical facts elsewhere in the search stay available.
    std::vector<ProcessedRecord> processed;
    for (const RuleMatch& match :
         matching_rules(state.kb, state.next_instance_id, goal, bindings)) {
        if (match.rule.is_fact()) {
            ProcessedRecord record{goal.name(), goal.arity(),
                                   apply(match.bindings, goal).args()};
            if (contains_processed(processed, record))
                continue;
            processed.push_back(std::move(record));
            if (!sink(match.bindings))
                return false;
        } else {
            if (!resolve_node(state, *match.rule.body(), match.bindings, depth + 1, sink))
                return false;
        }
    }
    return true;
}

bool resolve_node(EngineState& state, const Relation& relation, const BindingSet& bindings,
                  int depth, const BindingSink& sink) {
    if (depth > state.options.max_depth)
        throw DepthLimitError(render_predicate(leftmost_goal(relation)),
                              state.options.max_depth);

    // Solutions that agree on every variable visible here count once.
    std::vector<Variable> vars = visible_variables(relation);
    std::vector<std::vector<Term>> seen;
    auto deduped = [&](const BindingSet& solution) {
        std::vector<Term> key = projection(vars, solution);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            return true;
        seen.push_back(std::move(key));
        return sink(solution);
    };

    switch (relation.kind()) {
    case Relation::Kind::Goal:
        return resolve_predicate(state, relation.predicate(), bindings, depth, deduped);
    case Relation::Kind::And:
        return resolve_node(state, relation.first_member(), bindings, depth + 1,
                            [&](const BindingSet& left) {
                                return resolve_node(state, relation.second_member(), left,
                                                    depth + 1, deduped);
                            });
    case Relation::Kind::Or:
        if (!resolve_node(state, relation.first_member(), bindings, depth + 1, deduped))
            return false;
        return resolve_node(state, relation.second_member(), bindings, depth + 1, deduped);
    }
    throw std::logic_error("unreachable relation kind");
}

} // namespace

std::vector<RuleMatch> matching_rules(const KnowledgeBase& kb, int& next_instance_id,
                                      const Predicate& goal, const BindingSet& current) {
    std::vector<RuleMatch> matches;
    for (const Rule& rule : kb.rules()) {
        Rule fresh = retag(rule, VarScope::rule_instance(next_instance_id++));
        if (auto unified = unify(goal, fresh.head(), current))
            matches.push_back(RuleMatch{std::move(fresh), std::move(*unified)});
    }
    return matches;
}

std::vector<BindingSet> resolve(const KnowledgeBase& kb, const Relation& relation,
                                const BindingSet& bindings, const QueryOptions& options) {
    EngineState state{kb, options};
    std::vector<BindingSet> solutions;
    resolve_node(state, relation, bindings, 1, [&](const BindingSet& s) {
        solutions.push_back(s);
        return true;
    });
    return solutions;
}

void query_stream(const KnowledgeBase& kb, const Predicate& goal, const QueryOptions& options,
                  const ResultSink& sink) {
    if (options.max_depth < 1)
        throw InvalidQueryError("max_depth must be at least 1");
    if (options.max_solutions && *options.max_solutions == 0)
        throw InvalidQueryError("max_solutions must be at least 1 when set");

    // Query variables in order of first appearance, before tagging.
    std::vector<Variable> query_vars;
    for (const Term& t : goal.args())
        if (t.is_variable() &&
            std::find(query_vars.begin(), query_vars.end(), t.variable()) == query_vars.end())
            query_vars.push_back(t.variable());

    Predicate tagged = retag(goal, VarScope::query());

    EngineState state{kb, options};
    std::vector<ResultSet> emitted;
    auto report = [&](const BindingSet& solution) {
        ResultSet rs;
        for (const Variable& v : query_vars) {
            Term value = values_of(Variable(v.name(), VarScope::query()), solution);
            if (value.is_variable())
                value = Term(Variable(v.name())); // free: keep the user name
            rs.add(v.name(), std::move(value));
        }
        if (std::find(emitted.begin(), emitted.end(), rs) != emitted.end())
            return true;
        emitted.push_back(rs);
        bool keep_going = sink(emitted.back());
        if (options.max_solutions && emitted.size() >= *options.max_solutions)
            return false;
        return keep_going;
    };
    resolve_node(state, Relation::goal(tagged), BindingSet{}, 1, report);
}

QueryResult query(const KnowledgeBase& kb, const Predicate& goal, const QueryOptions& options) {
    QueryResult result;
    query_stream(kb, goal, options, [&](const ResultSet& rs) {
        result.result_sets.push_back(rs);
        return true;
    });
    result.success = !result.result_sets.empty();
    return result;
}

} // namespace hornlog
