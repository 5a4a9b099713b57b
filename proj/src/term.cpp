#include "hornlog/term.hpp"

#include <cctype>
#include <stdexcept>

namespace hornlog {

ConstantValue::ConstantValue(ConstantKind kind, std::string str, std::int64_t num, bool flag)
    : kind_(kind), str_(std::move(str)), int_(num), bool_(flag) {}

ConstantValue ConstantValue::symbol(std::string name) {
    if (name.empty())
        throw std::invalid_argument("symbol name must be non-empty");
    for (unsigned char c : name)
        if (std::isspace(c))
            throw std::invalid_argument("symbol name must not contain whitespace: '" + name + "'");
    return ConstantValue(ConstantKind::Symbol, std::move(name), 0, false);
}

ConstantValue ConstantValue::text(std::string value) {
    return ConstantValue(ConstantKind::Text, std::move(value), 0, false);
}

ConstantValue ConstantValue::integer(std::int64_t value) {
    return ConstantValue(ConstantKind::Integer, {}, value, false);
}

ConstantValue ConstantValue::boolean(bool value) {
    return ConstantValue(ConstantKind::Boolean, {}, 0, value);
}

const std::string& ConstantValue::symbol_name() const {
    if (kind_ != ConstantKind::Symbol)
        throw std::logic_error("constant is not a symbol");
    return str_;
}

const std::string& ConstantValue::text() const {
    if (kind_ != ConstantKind::Text)
        throw std::logic_error("constant is not a text value");
    return str_;
}

std::int64_t ConstantValue::integer() const {
    if (kind_ != ConstantKind::Integer)
        throw std::logic_error("constant is not an integer");
    return int_;
}

bool ConstantValue::boolean() const {
    if (kind_ != ConstantKind::Boolean)
        throw std::logic_error("constant is not a boolean");
    return bool_;
}

bool operator==(const ConstantValue& a, const ConstantValue& b) {
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case ConstantKind::Symbol:
    case ConstantKind::Text:
        return a.str_ == b.str_;
    case ConstantKind::Integer:
        return a.int_ == b.int_;
    case ConstantKind::Boolean:
        return a.bool_ == b.bool_;
    }
    return false;
}

VarScope VarScope::rule_instance(int id) {
    if (id <= 0)
        throw std::invalid_argument("rule instance id must be positive");
    return {VarScopeKind::RuleInstance, id};
}

Variable::Variable(std::string name, VarScope scope) : name_(std::move(name)), scope_(scope) {
    if (name_.empty())
        throw std::invalid_argument("variable name must be non-empty");
}

const Variable& Term::variable() const {
    if (!is_variable())
        throw std::logic_error("term is not a variable");
    return std::get<Variable>(value_);
}

const ConstantValue& Term::constant() const {
    if (is_variable())
        throw std::logic_error("term is not a constant");
    return std::get<ConstantValue>(value_);
}

bool is_variable(const Term& term) noexcept {
    return term.is_variable();
}

} // namespace hornlog
