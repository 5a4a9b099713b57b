#include "hornlog/unify.hpp"

#include <algorithm>
#include <stdexcept>

namespace hornlog {

Binding::Binding(Variable v, Term t) : var(std::move(v)), value(std::move(t)) {
    if (value.is_variable() && value.variable() == var)
        throw std::invalid_argument("variable must not bind to itself: " + var.name());
}

namespace {

bool has_binding_for(const std::vector<Binding>& bindings, const Variable& var) {
    return std::any_of(bindings.begin(), bindings.end(),
                       [&](const Binding& b) { return b.var == var; });
}

// Follows var-to-var links forward from `start`; with the functional
// invariant a cycle exists iff this walk revisits a variable.
bool on_cycle(const std::vector<Binding>& bindings, const Variable& start) {
    std::vector<Variable> visited{start};
    Variable current = start;
    for (;;) {
        auto it = std::find_if(bindings.begin(), bindings.end(),
                               [&](const Binding& b) { return b.var == current; });
        if (it == bindings.end() || !it->value.is_variable())
            return false;
        current = it->value.variable();
        if (std::find(visited.begin(), visited.end(), current) != visited.end())
            return true;
        visited.push_back(current);
    }
}

struct VariableClass {
    std::vector<Variable> members;
    std::optional<ConstantValue> ground;
};

// Walks the equivalence class of `var`: var-to-var links are followed in both
// directions with a visited set, and any constant binding on a member grounds
// the class. Two distinct constants in one class violate the chain
// consistency invariant and are reported as an internal error.
VariableClass collect_class(const Variable& var, const BindingSet& bindings) {
    VariableClass cls;
    cls.members.push_back(var);
    std::vector<Variable> queue{var};
    auto visit = [&](const Variable& v) {
        if (std::find(cls.members.begin(), cls.members.end(), v) == cls.members.end()) {
            cls.members.push_back(v);
            queue.push_back(v);
        }
    };
    while (!queue.empty()) {
        Variable current = queue.back();
        queue.pop_back();
        for (const Binding& b : bindings.entries()) {
            if (b.var == current) {
                if (b.value.is_variable()) {
                    visit(b.value.variable());
                } else {
                    const ConstantValue& c = b.value.constant();
                    if (cls.ground && !(*cls.ground == c))
                        throw std::logic_error("inconsistent binding set: variable '" +
                                               current.name() +
                                               "' is chained to two distinct constants");
                    cls.ground = c;
                }
            } else if (b.value.is_variable() && b.value.variable() == current) {
                visit(b.var);
            }
        }
    }
    return cls;
}

Variable representative_of(const VariableClass& cls) {
    return *std::min_element(cls.members.begin(), cls.members.end());
}

// The member new bindings attach to: the least member that has no outgoing
// binding. For engine-built sets this is the representative itself.
Variable attach_point(const VariableClass& cls, const BindingSet& bindings) {
    std::optional<Variable> best;
    for (const Variable& m : cls.members) {
        if (bindings.bound_value(m))
            continue;
        if (!best || m < *best)
            best = m;
    }
    if (!best)
        throw std::logic_error("binding set has no attachable member in a free class");
    return *best;
}

bool unify_var_const(const Variable& var, const ConstantValue& value, BindingSet& s) {
    VariableClass cls = collect_class(var, s);
    if (cls.ground)
        return *cls.ground == value;
    s = s.extended(Binding(attach_point(cls, s), Term(value)));
    return true;
}

bool unify_var_var(const Variable& a, const Variable& b, BindingSet& s) {
    VariableClass ca = collect_class(a, s);
    VariableClass cb = collect_class(b, s);
    if (ca.ground && cb.ground)
        return *ca.ground == *cb.ground;
    if (ca.ground)
        return unify_var_const(b, *ca.ground, s);
    if (cb.ground)
        return unify_var_const(a, *cb.ground, s);
    Variable ra = representative_of(ca);
    Variable rb = representative_of(cb);
    if (ra == rb)
        return true; // already one class
    if (ra < rb)
        s = s.extended(Binding(attach_point(cb, s), Term(ra)));
    else
        s = s.extended(Binding(attach_point(ca, s), Term(rb)));
    return true;
}

bool unify_terms(const Term& a, const Term& b, BindingSet& s) {
    if (a.is_constant() && b.is_constant())
        return a.constant() == b.constant();
    if (a.is_variable() && b.is_constant())
        return unify_var_const(a.variable(), b.constant(), s);
    if (a.is_constant() && b.is_variable())
        return unify_var_const(b.variable(), a.constant(), s);
    return unify_var_var(a.variable(), b.variable(), s);
}

} // namespace

BindingSet::BindingSet(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
    for (std::size_t i = 0; i < bindings_.size(); ++i)
        for (std::size_t j = i + 1; j < bindings_.size(); ++j)
            if (bindings_[i].var == bindings_[j].var)
                throw std::invalid_argument("binding set binds variable '" +
                                            bindings_[i].var.name() + "' twice");
    for (const Binding& b : bindings_)
        if (on_cycle(bindings_, b.var))
            throw std::invalid_argument("binding set contains a variable cycle through '" +
                                        b.var.name() + "'");
}

std::optional<Term> BindingSet::bound_value(const Variable& var) const {
    for (const Binding& b : bindings_)
        if (b.var == var)
            return b.value;
    return std::nullopt;
}

BindingSet BindingSet::extended(Binding binding) const {
    if (has_binding_for(bindings_, binding.var))
        throw std::invalid_argument("binding set already binds variable '" + binding.var.name() +
                                    "'");
    BindingSet copy = *this;
    copy.bindings_.push_back(std::move(binding));
    return copy;
}

std::optional<BindingSet> unify(const Predicate& goal, const Predicate& head,
                                const BindingSet& current) {
    if (goal.name() != head.name() || goal.arity() != head.arity())
        return std::nullopt;
    BindingSet result = current;
    for (std::size_t i = 0; i < goal.arity(); ++i)
        if (!unify_terms(goal.args()[i], head.args()[i], result))
            return std::nullopt;
    return result;
}

Term values_of(const Variable& var, const BindingSet& bindings) {
    VariableClass cls = collect_class(var, bindings);
    if (cls.ground)
        return Term(*cls.ground);
    return Term(representative_of(cls));
}

Predicate apply(const BindingSet& bindings, const Predicate& predicate) {
    std::vector<Term> args;
    args.reserve(predicate.arity());
    for (const Term& t : predicate.args())
        args.push_back(t.is_variable() ? values_of(t.variable(), bindings) : t);
    return Predicate(predicate.name(), std::move(args));
}

} // namespace hornlog
