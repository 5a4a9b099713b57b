#include <doctest.h>

#include <stdexcept>

#include "hornlog/model.hpp"

using namespace hornlog;

namespace {

Term sym(const char* name) { return Term(ConstantValue::symbol(name)); }
Term var(const char* name) { return Term(Variable(name)); }

Predicate pred(const char* name, std::vector<Term> args = {}) {
    return Predicate(name, std::move(args));
}

int leaves(const Relation& r) {
    if (r.is_goal())
        return 1;
    return leaves(r.first_member()) + leaves(r.second_member());
}

int inner_nodes(const Relation& r) {
    if (r.is_goal())
        return 0;
    return 1 + inner_nodes(r.first_member()) + inner_nodes(r.second_member());
}

} // namespace

TEST_SUITE("core model") {

TEST_CASE("is_variable distinguishes term kinds") {
    CHECK(is_variable(var("X")));
    CHECK_FALSE(is_variable(sym("computer")));
    CHECK_FALSE(is_variable(Term(ConstantValue::integer(0))));
}

TEST_CASE("constant equality is structural per kind") {
    CHECK(ConstantValue::symbol("a") == ConstantValue::symbol("a"));
    CHECK(ConstantValue::symbol("a") != ConstantValue::symbol("b"));
    CHECK(ConstantValue::symbol("cold") != ConstantValue::text("cold"));
    CHECK(ConstantValue::integer(3) == ConstantValue::integer(3));
    CHECK(ConstantValue::integer(3) != ConstantValue::integer(4));
    CHECK(ConstantValue::boolean(true) != ConstantValue::boolean(false));
    CHECK(ConstantValue::text("") == ConstantValue::text(""));
}

TEST_CASE("constant accessors reject the wrong kind") {
    CHECK_THROWS_AS((void)ConstantValue::symbol("a").integer(), std::logic_error);
    CHECK_THROWS_AS((void)ConstantValue::integer(1).symbol_name(), std::logic_error);
    CHECK_THROWS_AS((void)ConstantValue::text("t").boolean(), std::logic_error);
}

TEST_CASE("symbols are non-empty and whitespace-free") {
    CHECK_THROWS_AS(ConstantValue::symbol(""), std::invalid_argument);
    CHECK_THROWS_AS(ConstantValue::symbol("two words"), std::invalid_argument);
    CHECK_THROWS_AS(ConstantValue::symbol("tab\tbed"), std::invalid_argument);
    CHECK_NOTHROW(ConstantValue::symbol("snake_case_1"));
}

TEST_CASE("variable identity is the name and scope pair") {
    CHECK(Variable("X") == Variable("X"));
    CHECK(Variable("X") != Variable("Y"));
    CHECK(Variable("X") != Variable("X", VarScope::query()));
    CHECK(Variable("X", VarScope::rule_instance(1)) != Variable("X", VarScope::rule_instance(2)));
    CHECK_THROWS_AS(Variable(""), std::invalid_argument);
    CHECK_THROWS_AS(VarScope::rule_instance(0), std::invalid_argument);
}

TEST_CASE("variable ordering is name first, then scope") {
    CHECK(Variable("A", VarScope::rule_instance(5)) < Variable("B"));
    CHECK(Variable("X") < Variable("X", VarScope::query()));
    CHECK(Variable("X", VarScope::query()) < Variable("X", VarScope::rule_instance(1)));
    CHECK(Variable("X", VarScope::rule_instance(1)) < Variable("X", VarScope::rule_instance(2)));
}

TEST_CASE("predicates expose name, args, arity") {
    Predicate p = pred("solution", {sym("computer"), var("L")});
    CHECK(p.name() == "solution");
    CHECK(p.arity() == 2);
    CHECK(p.args()[1] == var("L"));
    CHECK(pred("p").arity() == 0);
    CHECK_THROWS_AS(Predicate(""), std::invalid_argument);
}

TEST_CASE("predicate equality includes arity") {
    CHECK(pred("p", {sym("a")}) == pred("p", {sym("a")}));
    CHECK(pred("p", {sym("a")}) != pred("p", {sym("a"), sym("a")}));
    CHECK(pred("p", {sym("a")}) != pred("q", {sym("a")}));
}

TEST_CASE("is_fact tracks the absence of a body") {
    Rule fact(pred("solution", {sym("computer"), sym("bluescreen"), sym("crashed"),
                                Term(ConstantValue::text("Please restart the PC and report if "
                                                         "the problem occurs again!"))}));
    CHECK(is_fact(fact));

    Rule rule(pred("request", {var("K1"), var("K2"), var("K3"), var("L")}),
              Relation::disjunction(
                  Relation::goal(pred("solution", {var("K1"), var("K2"), var("K3"), var("L")})),
                  Relation::goal(pred("solution", {var("K1"), var("K3"), var("K2"), var("L")}))));
    CHECK_FALSE(is_fact(rule));

    Rule self(pred("p"), Relation::goal(pred("p")));
    CHECK_FALSE(is_fact(self));
}

TEST_CASE("goal accessors return the same predicate from both members") {
    Relation g = Relation::goal(pred("p", {sym("a")}));
    CHECK(g.is_goal());
    CHECK(g.predicate() == pred("p", {sym("a")}));
    CHECK(g.first_member().predicate() == g.predicate());
    CHECK(g.second_member().predicate() == g.predicate());
}

TEST_CASE("and/or members preserve construction order") {
    Relation a = Relation::goal(pred("a"));
    Relation b = Relation::goal(pred("b"));
    Relation both = Relation::conjunction(a, b);
    CHECK(both.kind() == Relation::Kind::And);
    CHECK(both.first_member() == a);
    CHECK(both.second_member() == b);
    CHECK_THROWS_AS((void)both.predicate(), std::logic_error);

    Relation either = Relation::disjunction(b, a);
    CHECK(either.kind() == Relation::Kind::Or);
    CHECK(either.first_member() == b);
    CHECK(either.second_member() == a);
}

TEST_CASE("conjoin and disjoin build right-nested trees") {
    Relation a = Relation::goal(pred("a"));
    Relation b = Relation::goal(pred("b"));
    Relation c = Relation::goal(pred("c"));

    CHECK(conjoin({a}) == a);
    CHECK(disjoin({b}) == b);
    CHECK(disjoin({a, b, c}) == Relation::disjunction(a, Relation::disjunction(b, c)));
    CHECK(conjoin({a, b, c}) == Relation::conjunction(a, Relation::conjunction(b, c)));
    CHECK_THROWS_AS(conjoin({}), std::invalid_argument);
    CHECK_THROWS_AS(disjoin({}), std::invalid_argument);
}

TEST_CASE("conjoin length law: k leaves, k-1 inner nodes, one kind") {
    std::vector<Relation> members;
    for (int i = 0; i < 7; ++i)
        members.push_back(Relation::goal(pred("g", {Term(ConstantValue::integer(i))})));
    Relation tree = conjoin(members);
    CHECK(leaves(tree) == 7);
    CHECK(inner_nodes(tree) == 6);

    // Leaves stay in list order along the right spine.
    const Relation* cursor = &tree;
    for (int i = 0; i < 6; ++i) {
        CHECK(cursor->kind() == Relation::Kind::And);
        CHECK(cursor->first_member() == members[static_cast<std::size_t>(i)]);
        cursor = &cursor->second_member();
    }
    CHECK(*cursor == members.back());
}

TEST_CASE("knowledge base preserves rule order and duplicates") {
    Rule r1(pred("p", {sym("a")}));
    Rule r2(pred("p", {sym("a")}));
    Rule r3(pred("q"), Relation::goal(pred("p", {var("X")})));
    KnowledgeBase kb({r1, r2, r3});
    REQUIRE(kb.size() == 3);
    CHECK(kb.rules()[0] == r1);
    CHECK(kb.rules()[1] == r2);
    CHECK(kb.rules()[2] == r3);
    CHECK(kb == KnowledgeBase({r1, r2, r3}));
    CHECK(kb != KnowledgeBase({r1, r3, r2}));
    CHECK(KnowledgeBase().size() == 0);
}

} // TEST_SUITE
