#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace hornlog {

// ============================================================================
// Constants
// ============================================================================

enum class ConstantKind { Symbol, Text, Integer, Boolean };

/// An immutable ground value: a symbol (atom), a text string, a 64-bit
/// integer, or a boolean. Symbols and texts are distinct even when their
/// payloads match ("cold" the string never equals cold the symbol).
class ConstantValue {
public:
    static ConstantValue symbol(std::string name);
    static ConstantValue text(std::string value);
    static ConstantValue integer(std::int64_t value);
    static ConstantValue boolean(bool value);

    ConstantKind kind() const noexcept { return kind_; }

    const std::string& symbol_name() const;
    const std::string& text() const;
    std::int64_t integer() const;
    bool boolean() const;

    friend bool operator==(const ConstantValue& a, const ConstantValue& b);
    friend bool operator!=(const ConstantValue& a, const ConstantValue& b) { return !(a == b); }

private:
    ConstantValue(ConstantKind kind, std::string str, std::int64_t num, bool flag);

    ConstantKind kind_;
    std::string str_;
    std::int64_t int_ = 0;
    bool bool_ = false;
};

// ============================================================================
// Variables
// ============================================================================

enum class VarScopeKind { User, Query, RuleInstance };

/// Where a variable lives. User variables come from declared rules and
/// queries; the engine retags query variables and stamps each applied rule
/// copy with a fresh instance id so equal names can never capture each other.
struct VarScope {
    VarScopeKind kind = VarScopeKind::User;
    int instance_id = 0; // positive iff kind == RuleInstance

    static VarScope user() noexcept { return {VarScopeKind::User, 0}; }
    static VarScope query() noexcept { return {VarScopeKind::Query, 0}; }
    static VarScope rule_instance(int id);

    auto operator<=>(const VarScope&) const = default;
};

/// A named logic variable. Identity is the (name, scope) pair; ordering is
/// lexicographic on name, then scope, which fixes class representatives.
class Variable {
public:
    explicit Variable(std::string name, VarScope scope = VarScope::user());

    const std::string& name() const noexcept { return name_; }
    const VarScope& scope() const noexcept { return scope_; }

    auto operator<=>(const Variable&) const = default;

private:
    std::string name_;
    VarScope scope_;
};

// ============================================================================
// Terms
// ============================================================================

/// A predicate argument: either a constant or a variable. Terms are flat;
/// there are no compound terms.
class Term {
public:
    Term(ConstantValue value) : value_(std::move(value)) {}
    Term(Variable variable) : value_(std::move(variable)) {}

    bool is_variable() const noexcept { return std::holds_alternative<Variable>(value_); }
    bool is_constant() const noexcept { return !is_variable(); }

    const Variable& variable() const;
    const ConstantValue& constant() const;

    friend bool operator==(const Term& a, const Term& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    std::variant<ConstantValue, Variable> value_;
};

bool is_variable(const Term& term) noexcept;

} // namespace hornlog
