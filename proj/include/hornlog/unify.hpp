#pragma once

#include <optional>
#include <vector>

#include "hornlog/model.hpp"
#include "hornlog/term.hpp"

namespace hornlog {

/// One variable assignment. The value is a constant or another variable;
/// a variable never binds to itself.
struct Binding {
    Binding(Variable var, Term value);

    Variable var;
    Term value;

    friend bool operator==(const Binding& a, const Binding& b) {
        return a.var == b.var && a.value == b.value;
    }
};

/// An ordered set of bindings, functional on variables: at most one binding
/// per variable. Variable-to-variable bindings link equivalence classes; a
/// class is ground when some member binds to a constant.
class BindingSet {
public:
    BindingSet() = default;
    /// Validates functionality and rejects variable cycles.
    explicit BindingSet(std::vector<Binding> bindings);

    const std::vector<Binding>& entries() const noexcept { return bindings_; }
    bool empty() const noexcept { return bindings_.empty(); }
    std::size_t size() const noexcept { return bindings_.size(); }

    /// The direct binding for a variable, if any (no class walking).
    std::optional<Term> bound_value(const Variable& var) const;

    /// Copy with one more binding appended; rejects a second binding for the
    /// same variable.
    BindingSet extended(Binding binding) const;

    friend bool operator==(const BindingSet& a, const BindingSet& b) {
        return a.bindings_ == b.bindings_;
    }
    friend bool operator!=(const BindingSet& a, const BindingSet& b) { return !(a == b); }

private:
    std::vector<Binding> bindings_;
};

/// Unifies two flat predicates under an existing binding set. Returns the
/// extended set on success (a superset of `current`), or nothing when names,
/// arities, or argument values clash. Both inputs are left untouched.
std::optional<BindingSet> unify(const Predicate& goal, const Predicate& head,
                                const BindingSet& current = {});

/// Resolves a variable through its equivalence class: the bound constant if
/// the class is ground, otherwise the class representative (its
/// lexicographically least member by name, then scope). Throws
/// std::logic_error on an inconsistent set, which unify never produces.
Term values_of(const Variable& var, const BindingSet& bindings);

/// Rewrites every variable in the predicate to its values_of resolution.
Predicate apply(const BindingSet& bindings, const Predicate& predicate);

} // namespace hornlog
