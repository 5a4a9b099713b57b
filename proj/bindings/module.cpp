#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hornlog/cli.hpp"
#include "hornlog/dsl.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/metrics.hpp"
#include "hornlog/model.hpp"
#include "hornlog/term.hpp"
#include "hornlog/unify.hpp"

namespace py = pybind11;
using namespace hornlog;

namespace {

std::string term_kind(const Term& term) {
    if (term.is_variable())
        return "variable";
    switch (term.constant().kind()) {
    case ConstantKind::Symbol:
        return "symbol";
    case ConstantKind::Text:
        return "text";
    case ConstantKind::Integer:
        return "integer";
    case ConstantKind::Boolean:
        return "boolean";
    }
    return "unknown";
}

py::object term_value(const Term& term) {
    if (term.is_variable())
        return py::str(term.variable().name());
    const ConstantValue& c = term.constant();
    switch (c.kind()) {
    case ConstantKind::Symbol:
        return py::str(c.symbol_name());
    case ConstantKind::Text:
        return py::str(c.text());
    case ConstantKind::Integer:
        return py::int_(c.integer());
    case ConstantKind::Boolean:
        return py::bool_(c.boolean());
    }
    return py::none();
}

std::string relation_kind(const Relation& rel) {
    switch (rel.kind()) {
    case Relation::Kind::Goal:
        return "goal";
    case Relation::Kind::And:
        return "and";
    case Relation::Kind::Or:
        return "or";
    }
    return "unknown";
}

} // namespace

PYBIND11_MODULE(_hornlog, m) {
    m.doc() = "Embeddable Horn-clause engine: knowledge bases, queries, unification, "
              "and software metrics.";

    py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);
    py::register_exception<DepthLimitError>(m, "DepthLimitError", PyExc_RuntimeError);
    py::register_exception<InvalidQueryError>(m, "InvalidQueryError", PyExc_ValueError);

    py::class_<Term>(m, "Term")
        .def_property_readonly("is_variable", &Term::is_variable)
        .def_property_readonly("kind", &term_kind)
        .def_property_readonly("value", &term_value)
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; }, py::is_operator())
        .def("__ne__", [](const Term& a, const Term& b) { return a != b; }, py::is_operator())
        .def("__repr__", [](const Term& t) { return render_term(t); });

    m.def("symbol", [](const std::string& name) { return Term(ConstantValue::symbol(name)); },
          py::arg("name"), "A symbolic constant term.");
    m.def("text", [](const std::string& value) { return Term(ConstantValue::text(value)); },
          py::arg("value"), "A text constant term.");
    m.def("integer", [](long long value) { return Term(ConstantValue::integer(value)); },
          py::arg("value"), "An integer constant term.");
    m.def("boolean", [](bool value) { return Term(ConstantValue::boolean(value)); },
          py::arg("value"), "A boolean constant term.");
    m.def("variable", [](const std::string& name) { return Term(Variable(name)); },
          py::arg("name"), "A named variable term.");

    py::class_<Predicate>(m, "Predicate")
        .def(py::init<std::string, std::vector<Term>>(), py::arg("name"),
             py::arg("args") = std::vector<Term>{})
        .def_property_readonly("name", &Predicate::name)
        .def_property_readonly("args",
                               [](const Predicate& p) {
                                   return std::vector<Term>(p.args().begin(), p.args().end());
                               })
        .def_property_readonly("arity", &Predicate::arity)
        .def("__eq__", [](const Predicate& a, const Predicate& b) { return a == b; },
             py::is_operator())
        .def("__ne__", [](const Predicate& a, const Predicate& b) { return a != b; },
             py::is_operator())
        .def("__repr__", [](const Predicate& p) { return render_predicate(p); });

    py::class_<Relation>(m, "Relation")
        .def_static("goal", &Relation::goal, py::arg("predicate"))
        .def_static("conjunction", &Relation::conjunction, py::arg("left"), py::arg("right"))
        .def_static("disjunction", &Relation::disjunction, py::arg("left"), py::arg("right"))
        .def_property_readonly("kind", &relation_kind)
        .def_property_readonly("is_goal", &Relation::is_goal)
        .def_property_readonly("predicate", &Relation::predicate)
        .def_property_readonly("first_member", &Relation::first_member)
        .def_property_readonly("second_member", &Relation::second_member)
        .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; },
             py::is_operator())
        .def("__ne__", [](const Relation& a, const Relation& b) { return a != b; },
             py::is_operator());

    m.def("conjoin", &conjoin, py::arg("members"),
          "Right-nested conjunction of one or more relations.");
    m.def("disjoin", &disjoin, py::arg("members"),
          "Right-nested disjunction of one or more relations.");

    py::class_<Rule>(m, "Rule")
        .def(py::init<Predicate>(), py::arg("head"))
        .def(py::init<Predicate, Relation>(), py::arg("head"), py::arg("body"))
        .def_property_readonly("head", &Rule::head)
        .def_property_readonly("body",
                               [](const Rule& r) -> std::optional<Relation> { return r.body(); })
        .def_property_readonly("is_fact", &Rule::is_fact)
        .def("__eq__", [](const Rule& a, const Rule& b) { return a == b; }, py::is_operator())
        .def("__ne__", [](const Rule& a, const Rule& b) { return a != b; }, py::is_operator());

    py::class_<KnowledgeBase>(m, "KnowledgeBase")
        .def(py::init<>())
        .def(py::init<std::vector<Rule>>(), py::arg("rules"))
        .def_property_readonly("rules",
                               [](const KnowledgeBase& kb) {
                                   return std::vector<Rule>(kb.rules().begin(),
                                                            kb.rules().end());
                               })
        .def("__len__", &KnowledgeBase::size)
        .def("__eq__",
             [](const KnowledgeBase& a, const KnowledgeBase& b) { return a == b; },
             py::is_operator())
        .def("__ne__",
             [](const KnowledgeBase& a, const KnowledgeBase& b) { return a != b; },
             py::is_operator());

    py::class_<BindingSet>(m, "BindingSet")
        .def(py::init<>())
        .def("__len__", &BindingSet::size)
        .def_property_readonly("entries",
                               [](const BindingSet& b) {
                                   py::list out;
                                   for (const Binding& binding : b.entries())
                                       out.append(py::make_tuple(Term(binding.var),
                                                                 binding.value));
                                   return out;
                               })
        .def("__eq__", [](const BindingSet& a, const BindingSet& b) { return a == b; },
             py::is_operator());

    py::class_<QueryResult>(m, "QueryResult")
        .def_readonly("success", &QueryResult::success)
        .def_property_readonly("result_sets",
                               [](const QueryResult& r) {
                                   py::list out;
                                   for (const ResultSet& rs : r.result_sets) {
                                       py::dict solution;
                                       for (const auto& [name, value] : rs.entries())
                                           solution[py::str(name)] = value;
                                       out.append(solution);
                                   }
                                   return out;
                               })
        .def("__bool__", [](const QueryResult& r) { return r.success; });

    m.def(
        "parse_program",
        [](const std::string& text) {
            ProgramParseResult result = parse_program(text);
            if (auto* errors = std::get_if<std::vector<ParseError>>(&result)) {
                std::string message;
                for (const ParseError& e : *errors) {
                    if (!message.empty())
                        message += "\n";
                    message += std::to_string(e.span.line) + ":" +
                               std::to_string(e.span.column) + ": " + e.message;
                }
                throw py::value_error(message);
            }
            return std::get<KnowledgeBase>(std::move(result));
        },
        py::arg("text"), "Parses knowledge base text, raising ValueError on bad input.");

    m.def(
        "parse_query",
        [](const std::string& text) {
            QueryParseResult result = parse_query(text);
            if (auto* error = std::get_if<ParseError>(&result))
                throw py::value_error(std::to_string(error->span.line) + ":" +
                                      std::to_string(error->span.column) + ": " +
                                      error->message);
            return std::get<Predicate>(std::move(result));
        },
        py::arg("text"), "Parses one query, raising ValueError on bad input.");

    m.def("format_program", &format_program, py::arg("kb"),
          "Renders a knowledge base in canonical textual form.");
    m.def("render_term", &render_term, py::arg("term"));
    m.def("render_predicate", &render_predicate, py::arg("predicate"));

    m.def(
        "query",
        [](const KnowledgeBase& kb, const Predicate& goal, int max_depth,
           std::optional<std::size_t> max_solutions) {
            QueryOptions options;
            options.max_depth = max_depth;
            options.max_solutions = max_solutions;
            return query(kb, goal, options);
        },
        py::arg("kb"), py::arg("goal"), py::arg("max_depth") = QueryOptions{}.max_depth,
        py::arg("max_solutions") = py::none(),
        "Proves a goal against the knowledge base and collects every solution.");

    m.def(
        "unify",
        [](const Predicate& goal, const Predicate& head, const BindingSet& current) {
            return unify(goal, head, current);
        },
        py::arg("goal"), py::arg("head"), py::arg("current") = BindingSet{},
        "Unifies two predicates, returning the extended binding set or None.");

    m.def("apply", &apply, py::arg("bindings"), py::arg("predicate"),
          "Rewrites the predicate's variables through the binding set.");

    m.def(
        "values_of",
        [](const Term& variable, const BindingSet& bindings) {
            if (!variable.is_variable())
                throw py::value_error("values_of needs a variable term");
            return values_of(variable.variable(), bindings);
        },
        py::arg("variable"), py::arg("bindings"),
        "Resolves a variable through its equivalence class.");

    m.def(
        "halstead",
        [](long long n1, long long n2, long long N1, long long N2) {
            HalsteadReport report = halstead({n1, n2, N1, N2});
            HalsteadRounded view = rounded(report);
            py::dict out;
            out["N"] = report.length;
            out["n"] = report.vocabulary;
            out["U"] = report.scope;
            out["S"] = report.difficulty;
            out["A"] = report.workload;
            out["D"] = report.duration_s;
            py::dict r;
            r["N"] = view.length;
            r["n"] = view.vocabulary;
            r["U"] = view.scope;
            r["S"] = view.difficulty;
            r["A"] = view.workload;
            r["D"] = view.duration_s;
            out["rounded"] = r;
            return out;
        },
        py::arg("n1"), py::arg("n2"), py::arg("N1"), py::arg("N2"),
        "Halstead measures from distinct/total operator and operand counts.");

    m.def(
        "mccabe",
        [](long long edges, long long nodes, long long components) {
            CyclomaticResult result = cyclomatic({edges, nodes, components});
            py::dict out;
            out["v"] = result.value;
            out["warning"] =
                result.warning ? py::object(py::str(*result.warning)) : py::object(py::none());
            return out;
        },
        py::arg("edges"), py::arg("nodes"), py::arg("components") = 1,
        "Cyclomatic number of a control flow graph.");

    m.def(
        "quality",
        [](const std::string& json_text) {
            QualityReport report = quality_report(quality_sheet_from_json(json_text));
            py::dict out;
            out["approaches"] = report.approaches;
            out["artifacts"] = report.artifacts;
            out["metrics"] = report.metrics;
            py::dict factors;
            py::dict qa;
            for (std::size_t ai = 0; ai < report.artifacts.size(); ++ai) {
                py::dict per_metric;
                for (std::size_t mi = 0; mi < report.metrics.size(); ++mi) {
                    py::dict per_approach;
                    for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                        per_approach[py::str(report.approaches[ki])] =
                            report.factor(ai, mi, ki);
                    per_metric[py::str(report.metrics[mi])] = per_approach;
                }
                factors[py::str(report.artifacts[ai])] = per_metric;
                py::dict scores;
                for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                    scores[py::str(report.approaches[ki])] = report.artifact_score(ai, ki);
                qa[py::str(report.artifacts[ai])] = scores;
            }
            out["factors"] = factors;
            out["qa"] = qa;
            py::dict qp;
            for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                qp[py::str(report.approaches[ki])] = report.approach_score(ki);
            out["qp"] = qp;
            return out;
        },
        py::arg("json_text"),
        "Quality factors, artifact scores, and approach scores from a measurement "
        "document.");

    m.def(
        "diagnose_harness",
        [](const KnowledgeBase& kb, const std::vector<std::string>& symptoms) {
            return cli::diagnose_harness(kb, symptoms);
        },
        py::arg("kb"), py::arg("symptoms"),
        "Runs the iterative diagnosis loop and returns every finding in order.");
}
