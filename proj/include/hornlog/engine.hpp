#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hornlog/model.hpp"
#include "hornlog/unify.hpp"

namespace hornlog {

struct QueryOptions {
    int max_depth = 10'000;                   // recursion budget, >= 1
    std::optional<std::size_t> max_solutions; // absent: enumerate everything
};

// ============================================================================
// Errors
// ============================================================================

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when resolution exceeds QueryOptions::max_depth; names the goal
/// that was about to be resolved.
class DepthLimitError : public EngineError {
public:
    DepthLimitError(std::string goal, int limit);
    const std::string& goal() const noexcept { return goal_; }
    int limit() const noexcept { return limit_; }

private:
    std::string goal_;
    int limit_;
};

class InvalidQueryError : public EngineError {
public:
    using EngineError::EngineError;
};

// ============================================================================
// Dedup records
// ============================================================================

/// Notes one already-used fact match within a single goal resolution: the
/// matched head's signature plus the goal arguments projected through the
/// successful binding set.
struct ProcessedRecord {
    std::string name;
    std::size_t arity = 0;
    std::vector<Term> solution_key;

    friend bool operator==(const ProcessedRecord& a, const ProcessedRecord& b) {
        return a.name == b.name && a.arity == b.arity && a.solution_key == b.solution_key;
    }
};

bool contains_processed(const std::vector<ProcessedRecord>& records,
                        const ProcessedRecord& candidate);

// ============================================================================
// Rule matching and resolution
// ============================================================================

struct RuleMatch {
    Rule rule; // fresh rule-instance copy
    BindingSet bindings;
};

/// Scans the knowledge base in order. Every rule is copied with its variables
/// retagged to a fresh rule-instance scope (consuming one counter value per
/// rule), then unified against the goal; matches are returned with their
/// extended binding sets.
std::vector<RuleMatch> matching_rules(const KnowledgeBase& kb, int& next_instance_id,
                                      const Predicate& goal, const BindingSet& current);

/// Enumerates every binding set that satisfies the relation, depth first,
/// knowledge-base order, left disjunct before right. Duplicate solutions
/// (equal projections on the relation's variables) are dropped.
std::vector<BindingSet> resolve(const KnowledgeBase& kb, const Relation& relation,
                                const BindingSet& bindings = {},
                                const QueryOptions& options = {});

// ============================================================================
// Queries
// ============================================================================

/// One answer: the query's variables (by user name, in order of first
/// appearance) mapped to ground constants, or to themselves when free.
class ResultSet {
public:
    void add(std::string name, Term value);
    const std::vector<std::pair<std::string, Term>>& entries() const noexcept { return entries_; }
    const Term* find(const std::string& name) const;
    bool empty() const noexcept { return entries_.empty(); }

    friend bool operator==(const ResultSet& a, const ResultSet& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const ResultSet& a, const ResultSet& b) { return !(a == b); }

private:
    std::vector<std::pair<std::string, Term>> entries_;
};

struct QueryResult {
    bool success = false;
    std::vector<ResultSet> result_sets;
};

/// Streaming form of query(): distinct ResultSets are handed to the sink in
/// discovery order; returning false stops the search. Honors
/// QueryOptions::max_solutions.
using ResultSink = std::function<bool(const ResultSet&)>;
void query_stream(const KnowledgeBase& kb, const Predicate& goal, const QueryOptions& options,
                  const ResultSink& sink);

/// Proves a single goal against the knowledge base. success is true iff at
/// least one solution exists; a variable-free success carries one empty
/// ResultSet. Result sets are distinct and in discovery order.
QueryResult query(const KnowledgeBase& kb, const Predicate& goal,
                  const QueryOptions& options = {});

} // namespace hornlog
