#include "hornlog/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hornlog/dsl.hpp"
#include "hornlog/unify.hpp"

namespace hornlog::cli {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string render_parse_error(const std::string& source_name, const ParseError& error) {
    return source_name + ":" + std::to_string(error.span.line) + ":" +
           std::to_string(error.span.column) + ": " + error.message;
}

// Loads and parses a knowledge base, reporting problems itself. Returns
// nothing after printing to err with the exit code stored in `status`.
std::optional<KnowledgeBase> load_kb(const std::string& path, std::ostream& err, int& status) {
    auto text = read_file(path);
    if (!text) {
        err << "cannot open knowledge base file '" << path << "'\n";
        status = kUsageError;
        return std::nullopt;
    }
    ProgramParseResult parsed = parse_program(*text);
    if (auto* errors = std::get_if<std::vector<ParseError>>(&parsed)) {
        for (const ParseError& e : *errors)
            err << render_parse_error(path, e) << "\n";
        status = kUsageError;
        return std::nullopt;
    }
    return std::get<KnowledgeBase>(std::move(parsed));
}

OrderedJson term_to_json(const Term& term) {
    OrderedJson j;
    if (term.is_variable()) {
        j["kind"] = "variable";
        j["value"] = term.variable().name();
        return j;
    }
    const ConstantValue& c = term.constant();
    switch (c.kind()) {
    case ConstantKind::Symbol:
        j["kind"] = "symbol";
        j["value"] = c.symbol_name();
        break;
    case ConstantKind::Text:
        j["kind"] = "text";
        j["value"] = c.text();
        break;
    case ConstantKind::Integer:
        j["kind"] = "integer";
        j["value"] = c.integer();
        break;
    case ConstantKind::Boolean:
        j["kind"] = "boolean";
        j["value"] = c.boolean();
        break;
    }
    return j;
}

// Streams one query in the plain rendering: `true` ahead of the first
// solution, one `Name = value` line per variable, a blank line between
// solutions, `false` when nothing holds. Returns the solution count.
std::size_t print_plain_solutions(const KnowledgeBase& kb, const Predicate& goal,
                                  const QueryOptions& options, std::ostream& out) {
    std::size_t count = 0;
    query_stream(kb, goal, options, [&](const ResultSet& rs) {
        if (count == 0)
            out << "true\n";
        else
            out << "\n";
        ++count;
        for (const auto& [name, value] : rs.entries())
            out << name << " = " << render_term(value) << "\n";
        return true;
    });
    if (count == 0)
        out << "false\n";
    return count;
}

std::string trimmed(const std::string& line) {
    std::size_t begin = 0, end = line.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1])))
        --end;
    return line.substr(begin, end - begin);
}

// Plain payload text for diagnose results, mirroring how the medical harness
// concatenates them: symbols and texts unquoted, everything else rendered.
std::string harness_text(const Term& term) {
    if (term.is_variable())
        return term.variable().name();
    const ConstantValue& c = term.constant();
    if (c.kind() == ConstantKind::Text)
        return c.text();
    return render_constant(c);
}

bool valid_symbol_payload(const std::string& text) {
    if (text.empty())
        return false;
    return std::none_of(text.begin(), text.end(),
                        [](unsigned char c) { return std::isspace(c); });
}

std::string format_fixed(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

} // namespace

std::vector<std::string> diagnose_harness(const KnowledgeBase& kb,
                                          const std::vector<std::string>& symptoms,
                                          const QueryOptions& options) {
    std::vector<std::string> findings;
    std::vector<std::string> to_check = symptoms;
    while (!to_check.empty()) {
        std::vector<std::string> fresh;
        for (const std::string& first : symptoms) {
            for (const std::string& second : to_check) {
                if (!valid_symbol_payload(first) || !valid_symbol_payload(second))
                    continue;
                Predicate goal("diagnosis",
                               {Term(ConstantValue::symbol(first)),
                                Term(ConstantValue::symbol(second)), Term(Variable("D"))});
                QueryResult result = query(kb, goal, options);
                for (const ResultSet& rs : result.result_sets) {
                    const Term* d = rs.find("D");
                    if (!d)
                        continue;
                    std::string text = harness_text(*d);
                    findings.push_back(text);
                    fresh.push_back(text);
                }
            }
        }
        to_check.clear();
        for (const std::string& s : fresh)
            if (std::find(to_check.begin(), to_check.end(), s) == to_check.end())
                to_check.push_back(s);
    }
    return findings;
}

int run_command(const std::string& kb_path, const std::string& query_text,
                const QueryOptions& options, bool json, std::ostream& out, std::ostream& err) {
    int status = kSuccess;
    auto kb = load_kb(kb_path, err, status);
    if (!kb)
        return status;

    QueryParseResult parsed = parse_query(query_text);
    if (auto* error = std::get_if<ParseError>(&parsed)) {
        err << render_parse_error("<query>", *error) << "\n";
        return kUsageError;
    }
    const Predicate& goal = std::get<Predicate>(parsed);

    try {
        if (json) {
            QueryResult result = query(*kb, goal, options);
            OrderedJson doc;
            doc["success"] = result.success;
            doc["solutions"] = OrderedJson::array();
            for (const ResultSet& rs : result.result_sets) {
                OrderedJson solution = OrderedJson::object();
                for (const auto& [name, value] : rs.entries())
                    solution[name] = term_to_json(value);
                doc["solutions"].push_back(std::move(solution));
            }
            out << doc.dump(2) << "\n";
            return result.success ? kSuccess : kNoSolution;
        }
        std::size_t count = print_plain_solutions(*kb, goal, options, out);
        return count > 0 ? kSuccess : kNoSolution;
    } catch (const EngineError& e) {
        err << e.what() << "\n";
        return kRuntimeError;
    }
}

int repl_command(const std::string& kb_path, const QueryOptions& options, std::istream& in,
                 std::ostream& out, std::ostream& err, bool show_prompt) {
    int status = kSuccess;
    auto kb = load_kb(kb_path, err, status);
    if (!kb)
        return status;

    std::string line;
    for (;;) {
        if (show_prompt)
            out << "?- " << std::flush;
        if (!std::getline(in, line))
            return kSuccess;
        std::string text = trimmed(line);
        if (text.empty())
            continue;
        if (text == ":quit")
            return kSuccess;
        QueryParseResult parsed = parse_query(text);
        if (auto* error = std::get_if<ParseError>(&parsed)) {
            err << render_parse_error("<repl>", *error) << "\n";
            continue;
        }
        try {
            print_plain_solutions(*kb, std::get<Predicate>(parsed), options, out);
        } catch (const EngineError& e) {
            err << e.what() << "\n";
        }
    }
}

int diagnose_command(const std::string& kb_path, const std::vector<std::string>& symptoms,
                     const QueryOptions& options, bool json, std::ostream& out,
                     std::ostream& err) {
    int status = kSuccess;
    auto kb = load_kb(kb_path, err, status);
    if (!kb)
        return status;
    try {
        std::vector<std::string> findings = diagnose_harness(*kb, symptoms, options);
        if (json) {
            OrderedJson doc;
            doc["diagnoses"] = findings;
            out << doc.dump(2) << "\n";
        } else if (!findings.empty()) {
            for (std::size_t i = 0; i < findings.size(); ++i)
                out << (i > 0 ? "," : "") << findings[i];
            out << "\n";
        }
        return findings.empty() ? kNoSolution : kSuccess;
    } catch (const EngineError& e) {
        err << e.what() << "\n";
        return kRuntimeError;
    }
}

int check_command(const std::string& kb_path, bool json, std::ostream& out, std::ostream& err) {
    auto text = read_file(kb_path);
    if (!text) {
        err << "cannot open knowledge base file '" << kb_path << "'\n";
        return kUsageError;
    }
    ProgramParseResult parsed = parse_program(*text);
    if (auto* errors = std::get_if<std::vector<ParseError>>(&parsed)) {
        if (json) {
            OrderedJson doc;
            doc["errors"] = OrderedJson::array();
            for (const ParseError& e : *errors) {
                OrderedJson item;
                item["line"] = e.span.line;
                item["column"] = e.span.column;
                item["length"] = e.span.length;
                item["message"] = e.message;
                item["expected"] = e.expected;
                doc["errors"].push_back(std::move(item));
            }
            out << doc.dump(2) << "\n";
        } else {
            for (const ParseError& e : *errors)
                err << render_parse_error(kb_path, e) << "\n";
        }
        return kUsageError;
    }

    const KnowledgeBase& kb = std::get<KnowledgeBase>(parsed);
    std::vector<std::string> signatures;
    for (const Rule& rule : kb.rules()) {
        std::string sig = rule.head().name() + "/" + std::to_string(rule.head().arity());
        if (std::find(signatures.begin(), signatures.end(), sig) == signatures.end())
            signatures.push_back(sig);
    }
    if (json) {
        OrderedJson doc;
        doc["clauses"] = kb.size();
        doc["predicates"] = signatures;
        out << doc.dump(2) << "\n";
        return kSuccess;
    }
    out << kb.size() << " clause" << (kb.size() == 1 ? "" : "s");
    if (!signatures.empty()) {
        out << ", predicates: ";
        for (std::size_t i = 0; i < signatures.size(); ++i)
            out << (i > 0 ? ", " : "") << signatures[i];
    }
    out << "\n";
    return kSuccess;
}

int metrics_halstead_command(const HalsteadCounts& counts, bool json, std::ostream& out,
                             std::ostream& err) {
    try {
        HalsteadReport report = halstead(counts);
        HalsteadRounded view = rounded(report);
        if (json) {
            OrderedJson doc;
            doc["counts"] = {{"n1", counts.distinct_operators},
                             {"n2", counts.distinct_operands},
                             {"N1", counts.total_operators},
                             {"N2", counts.total_operands}};
            doc["report"] = {{"N", report.length},     {"n", report.vocabulary},
                             {"U", report.scope},      {"S", report.difficulty},
                             {"A", report.workload},   {"D", report.duration_s}};
            doc["rounded"] = {{"N", view.length},   {"n", view.vocabulary},
                              {"U", view.scope},    {"S", view.difficulty},
                              {"A", view.workload}, {"D", view.duration_s}};
            out << doc.dump(2) << "\n";
            return kSuccess;
        }
        out << "n1 = " << counts.distinct_operators << "\n";
        out << "n2 = " << counts.distinct_operands << "\n";
        out << "N1 = " << counts.total_operators << "\n";
        out << "N2 = " << counts.total_operands << "\n";
        out << "N = " << view.length << "\n";
        out << "n = " << view.vocabulary << "\n";
        out << "U = " << view.scope << "\n";
        out << "S = " << view.difficulty << "\n";
        out << "A = " << view.workload << "\n";
        out << "D = " << view.duration_s << " s\n";
        return kSuccess;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kRuntimeError;
    }
}

int metrics_mccabe_command(const CfgCounts& counts, bool json, std::ostream& out,
                           std::ostream& err) {
    try {
        CyclomaticResult result = cyclomatic(counts);
        if (result.warning)
            err << "warning: " << *result.warning << "\n";
        if (json) {
            OrderedJson doc;
            doc["v"] = result.value;
            if (result.warning)
                doc["warning"] = *result.warning;
            out << doc.dump(2) << "\n";
        } else {
            out << "v(G) = " << result.value << "\n";
        }
        return kSuccess;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kRuntimeError;
    }
}

int metrics_quality_command(const std::string& measurements_path, bool json, std::ostream& out,
                            std::ostream& err) {
    auto text = read_file(measurements_path);
    if (!text) {
        err << "cannot open measurement file '" << measurements_path << "'\n";
        return kUsageError;
    }
    try {
        QualitySheet sheet = quality_sheet_from_json(*text);
        QualityReport report = quality_report(sheet);

        if (json) {
            OrderedJson doc;
            doc["approaches"] = report.approaches;
            doc["artifacts"] = report.artifacts;
            doc["metrics"] = report.metrics;
            OrderedJson factors = OrderedJson::object();
            OrderedJson qa = OrderedJson::object();
            for (std::size_t ai = 0; ai < report.artifacts.size(); ++ai) {
                OrderedJson per_metric = OrderedJson::object();
                for (std::size_t mi = 0; mi < report.metrics.size(); ++mi) {
                    OrderedJson per_approach = OrderedJson::object();
                    for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                        per_approach[report.approaches[ki]] = report.factor(ai, mi, ki);
                    per_metric[report.metrics[mi]] = std::move(per_approach);
                }
                factors[report.artifacts[ai]] = std::move(per_metric);
                OrderedJson scores = OrderedJson::object();
                for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                    scores[report.approaches[ki]] = report.artifact_score(ai, ki);
                qa[report.artifacts[ai]] = std::move(scores);
            }
            doc["factors"] = std::move(factors);
            doc["qa"] = std::move(qa);
            OrderedJson qp = OrderedJson::object();
            for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                qp[report.approaches[ki]] = report.approach_score(ki);
            doc["qp"] = std::move(qp);
            out << doc.dump(2) << "\n";
            return kSuccess;
        }

        std::size_t label_width = 3; // "Q_A"
        for (const std::string& metric : report.metrics)
            label_width = std::max(label_width, metric.size() + 4); // "Q_M(...)"
        std::size_t value_width = 8;
        for (const std::string& approach : report.approaches)
            value_width = std::max(value_width, approach.size() + 2);

        auto pad = [](const std::string& text, std::size_t width, bool right) {
            std::string padding(width > text.size() ? width - text.size() : 0, ' ');
            return right ? padding + text : text + padding;
        };

        for (std::size_t ai = 0; ai < report.artifacts.size(); ++ai) {
            out << report.artifacts[ai] << "\n";
            out << "  " << pad("metric", label_width, false);
            for (const std::string& approach : report.approaches)
                out << pad(approach, value_width, true);
            out << "\n";
            for (std::size_t mi = 0; mi < report.metrics.size(); ++mi) {
                out << "  " << pad(report.metrics[mi], label_width, false);
                for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                    out << pad(format_fixed(report.raw_value(ai, mi, ki)), value_width, true);
                out << "\n";
            }
            for (std::size_t mi = 0; mi < report.metrics.size(); ++mi) {
                out << "  " << pad("Q_M(" + report.metrics[mi] + ")", label_width, false);
                for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                    out << pad(format_fixed(report.factor(ai, mi, ki)), value_width, true);
                out << "\n";
            }
            out << "  " << pad("Q_A", label_width, false);
            for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
                out << pad(format_fixed(report.artifact_score(ai, ki)), value_width, true);
            out << "\n\n";
        }
        out << "Q_P:";
        for (std::size_t ki = 0; ki < report.approaches.size(); ++ki)
            out << " " << report.approaches[ki] << "="
                << format_fixed(report.approach_score(ki));
        out << "\n";
        return kSuccess;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kUsageError;
    }
}

} // namespace hornlog::cli
