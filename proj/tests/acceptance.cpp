#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hornlog/cli.hpp"
#include "hornlog/dsl.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/metrics.hpp"
#include "hornlog/unify.hpp"

#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace hornlog;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void run_criterion(int index, const std::string& label,
                   const std::function<bool(std::string&)>& body) {
    std::string why;
    bool ok = false;
    try {
        ok = body(why);
    } catch (const std::exception& e) {
        why = e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << label << "\n";
    if (!ok) {
        ++failures;
        if (!why.empty())
            std::cerr << "       " << index << ". " << why << "\n";
    }
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixture(const char* name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

KnowledgeBase load(const std::string& path) {
    auto parsed = parse_program(read_file(path));
    if (!std::holds_alternative<KnowledgeBase>(parsed))
        throw std::runtime_error("fixture failed to parse: " + path);
    return std::get<KnowledgeBase>(parsed);
}

struct CliRun {
    int status = -1;
    std::string out;
};

std::optional<CliRun> run_cli(const std::string& args) {
    std::string command = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return std::nullopt;
    CliRun result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.out.append(buffer, n);
    int rc = pclose(pipe);
    if (rc == -1)
        return std::nullopt;
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

Term sym(const std::string& name) { return Term(ConstantValue::symbol(name)); }
Term var(const std::string& name) { return Term(Variable(name)); }

// Every p/0, p/1, p/2 predicate over constants {a, b, c} and variables
// {X, Y, Z}: 1 + 6 + 36 = 43.
std::vector<Predicate> enumerate_predicates() {
    std::vector<Term> terms = {sym("a"), sym("b"), sym("c"), var("X"), var("Y"), var("Z")};
    std::vector<Predicate> out;
    out.emplace_back("p");
    for (const Term& t : terms)
        out.emplace_back("p", std::vector<Term>{t});
    for (const Term& t1 : terms)
        for (const Term& t2 : terms)
            out.emplace_back("p", std::vector<Term>{t1, t2});
    return out;
}

Predicate ground(const Predicate& p, const std::map<std::string, Term>& sigma) {
    std::vector<Term> args;
    args.reserve(p.arity());
    for (const Term& t : p.args())
        args.push_back(t.is_variable() ? sigma.at(t.variable().name()) : t);
    return Predicate(p.name(), std::move(args));
}

// ---------------------------------------------------------------------------

bool halstead_table(std::string& why) {
    struct Row {
        HalsteadCounts counts;
        long long N, n, U, S, A, D;
    };
    const Row rows[] = {
        {{21, 47, 218, 169}, 387, 68, 2356, 38, 88946, 4941},
        {{6, 9, 84, 70}, 154, 15, 602, 23, 14039, 780},
        {{8, 30, 186, 117}, 303, 38, 1590, 16, 24806, 1378},
        {{29, 54, 289, 145}, 434, 83, 2767, 39, 107725, 5985},
        {{9, 18, 140, 102}, 242, 27, 1151, 26, 29342, 1630},
        {{14, 54, 302, 166}, 468, 68, 2849, 22, 61305, 3406},
    };
    auto start = Clock::now();
    for (const Row& row : rows) {
        HalsteadRounded r = rounded(halstead(row.counts));
        if (r.length != row.N || r.vocabulary != row.n || r.scope != row.U ||
            r.difficulty != row.S || std::llabs(r.workload - row.A) > 5 ||
            std::llabs(r.duration_s - row.D) > 1) {
            why = "column with n1 = " + std::to_string(row.counts.distinct_operators) +
                  " diverges from the reference values";
            return false;
        }
    }
    if (ms_since(start) >= 1000.0) {
        why = "computation took a second or longer";
        return false;
    }
    return true;
}

bool cyclomatic_table(std::string& why) {
    struct Row {
        CfgCounts counts;
        long long v;
    };
    const Row rows[] = {
        {{6, 5}, 3}, {{1, 2}, 1}, {{1, 2}, 1}, {{7, 5}, 4}, {{1, 2}, 1}, {{7, 6}, 3},
    };
    for (const Row& row : rows) {
        CyclomaticResult r = cyclomatic(row.counts);
        if (r.value != row.v || r.warning.has_value()) {
            why = "graph with " + std::to_string(row.counts.edges) + " edges and " +
                  std::to_string(row.counts.nodes) + " nodes diverges";
            return false;
        }
    }
    return true;
}

bool quality_study(std::string& why) {
    QualityReport report =
        quality_report(quality_sheet_from_json(read_file(fixture("paper_measurements.json"))));
    if (report.approaches.size() != 3 || report.artifacts.size() != 2 ||
        report.metrics.size() != 3) {
        why = "unexpected sheet shape";
        return false;
    }
    const double factors[2][3][3] = {
        {{1.55, 0.40, 1.05}, {1.48, 0.91, 0.61}, {1.80, 0.60, 0.60}},
        {{1.23, 0.51, 1.26}, {1.36, 0.89, 0.75}, {1.50, 0.38, 1.13}},
    };
    const double qa[2][3] = {{1.61, 0.64, 0.75}, {1.36, 0.59, 1.05}};
    const double qp[3] = {1.49, 0.61, 0.90};
    const double tol = 0.01;
    for (std::size_t ai = 0; ai < 2; ++ai)
        for (std::size_t mi = 0; mi < 3; ++mi)
            for (std::size_t ki = 0; ki < 3; ++ki)
                if (std::abs(report.factor(ai, mi, ki) - factors[ai][mi][ki]) > tol) {
                    why = "factor [" + report.artifacts[ai] + ", " + report.metrics[mi] + ", " +
                          report.approaches[ki] + "] = " +
                          std::to_string(report.factor(ai, mi, ki));
                    return false;
                }
    for (std::size_t ai = 0; ai < 2; ++ai)
        for (std::size_t ki = 0; ki < 3; ++ki)
            if (std::abs(report.artifact_score(ai, ki) - qa[ai][ki]) > tol) {
                why = "artifact score [" + report.artifacts[ai] + ", " +
                      report.approaches[ki] + "] = " +
                      std::to_string(report.artifact_score(ai, ki));
                return false;
            }
    for (std::size_t ki = 0; ki < 3; ++ki)
        if (std::abs(report.approach_score(ki) - qp[ki]) > tol) {
            why = "approach score [" + report.approaches[ki] + "] = " +
                  std::to_string(report.approach_score(ki));
            return false;
        }
    return true;
}

bool reference_queries(std::string& why) {
    const std::string hotline = "Please contact the hotline!";
    KnowledgeBase desk = load(fixture("it_service_desk.lkb"));
    KnowledgeBase medical = load(fixture("medical.lkb"));

    struct Probe {
        const KnowledgeBase* kb;
        Predicate goal;
        Term expected;
        const char* variable;
    };
    const Probe probes[] = {
        {&desk, Predicate("request", {sym("computer"), sym("liquid"), sym("shuttered"),
                                      var("L")}),
         Term(ConstantValue::text(hotline)), "L"},
        {&desk, Predicate("request", {sym("crashed"), sym("hot"), sym("computer"), var("L")}),
         Term(ConstantValue::text(hotline)), "L"},
        {&medical, Predicate("diagnosis", {sym("snuff"), sym("headache"), var("D")}),
         sym("cold"), "D"},
    };
    for (const Probe& probe : probes) {
        auto start = Clock::now();
        QueryResult result = query(*probe.kb, probe.goal);
        double elapsed = ms_since(start);
        if (!result.success || result.result_sets.size() != 1) {
            why = "expected exactly one solution for " + render_predicate(probe.goal);
            return false;
        }
        const Term* value = result.result_sets[0].find(probe.variable);
        if (!value || *value != probe.expected) {
            why = "wrong answer for " + render_predicate(probe.goal);
            return false;
        }
        if (elapsed >= 100.0) {
            why = render_predicate(probe.goal) + " took " + std::to_string(elapsed) + " ms";
            return false;
        }
    }

    auto cli = run_cli("run " + fixture("it_service_desk.lkb") +
                       " --query '?- request(computer, liquid, shuttered, L).'");
    if (!cli || cli->status != 0 || cli->out != "true\nL = \"" + hotline + "\"\n") {
        why = "command line run subcommand diverged";
        return false;
    }
    return true;
}

bool consultation_loops(std::string& why) {
    KnowledgeBase medical = load(fixture("medical.lkb"));
    auto direct = cli::diagnose_harness(medical, {"fever", "snuff", "headache"});
    if (direct != std::vector<std::string>{"cold", "cold", "influenza"}) {
        why = "direct harness produced a different finding list";
        return false;
    }

    auto first = run_cli("diagnose " + fixture("medical.lkb") + " fever snuff headache");
    if (!first || first->status != 0 || first->out != "cold,cold,influenza\n") {
        why = "first consultation diverged";
        return false;
    }
    auto second = run_cli("diagnose " + fixture("medical.lkb") + " abdominal_pain sickness");
    if (!second || second->status != 0 ||
        second->out != "gastrointestinal_disease,gastrointestinal_disease\n") {
        why = "second consultation diverged";
        return false;
    }
    return true;
}

bool oracle_agreement(std::string& why) {
    std::mt19937 rng(424242);
    static const std::vector<std::string> constants = {"a", "b", "c", "d"};
    auto start = Clock::now();
    for (int i = 0; i < 120; ++i) {
        testsupport::DatalogProgram program = testsupport::random_datalog(rng);
        std::vector<Predicate> facts = testsupport::forward_chain(program.kb);
        for (const auto& [name, arity] : program.signatures) {
            std::vector<Term> open_args;
            for (int k = 0; k < arity; ++k)
                open_args.push_back(var("A" + std::to_string(k)));
            Predicate open(name, open_args);
            if (testsupport::engine_answers(program.kb, open) !=
                testsupport::oracle_answers(facts, open)) {
                why = "open query " + render_predicate(open) + " disagrees on program " +
                      std::to_string(i);
                return false;
            }
            if (arity > 0) {
                std::vector<Term> bound_args = open_args;
                auto slot = static_cast<std::size_t>(
                    testsupport::pick_int(rng, 0, arity - 1));
                bound_args[slot] = sym(testsupport::pick(rng, constants));
                Predicate bound(name, bound_args);
                if (testsupport::engine_answers(program.kb, bound) !=
                    testsupport::oracle_answers(facts, bound)) {
                    why = "bound query " + render_predicate(bound) + " disagrees on program " +
                          std::to_string(i);
                    return false;
                }
            }
        }
    }
    if (ms_since(start) >= 10000.0) {
        why = "oracle comparison exceeded ten seconds";
        return false;
    }
    return true;
}

bool ancestor_chain(std::string& why) {
    auto parsed = parse_program("par(x1, x2). par(x2, x3). par(x3, x4). par(x4, x5).\n"
                                "anc(X, Y) :- par(X, Y) ; par(X, Z), anc(Z, Y).\n");
    if (!std::holds_alternative<KnowledgeBase>(parsed)) {
        why = "ancestor program failed to parse";
        return false;
    }
    const KnowledgeBase& kb = std::get<KnowledgeBase>(parsed);

    QueryResult open = query(kb, Predicate("anc", {var("X"), var("Y")}));
    std::set<std::string> pairs;
    for (const ResultSet& rs : open.result_sets)
        pairs.insert(testsupport::answer_key(rs.entries()));
    if (pairs.size() != 10 || open.result_sets.size() != 10) {
        why = "expected 10 ancestor pairs, saw " + std::to_string(open.result_sets.size());
        return false;
    }
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 5; ++j)
            if (!pairs.count("X=x" + std::to_string(i) + "|Y=x" + std::to_string(j) + "|")) {
                why = "missing ancestor pair x" + std::to_string(i) + ", x" + std::to_string(j);
                return false;
            }

    QueryResult rooted = query(kb, Predicate("anc", {sym("x1"), var("Y")}));
    std::set<std::string> descendants;
    for (const ResultSet& rs : rooted.result_sets)
        descendants.insert(testsupport::answer_key(rs.entries()));
    if (descendants != std::set<std::string>{"Y=x2|", "Y=x3|", "Y=x4|", "Y=x5|"}) {
        why = "descendants of x1 diverge";
        return false;
    }
    return true;
}

bool unification_laws(std::string& why) {
    std::vector<Predicate> predicates = enumerate_predicates();
    std::vector<Term> consts = {sym("a"), sym("b"), sym("c")};
    std::vector<std::map<std::string, Term>> sigmas;
    for (const Term& x : consts)
        for (const Term& y : consts)
            for (const Term& z : consts)
                sigmas.push_back({{"X", x}, {"Y", y}, {"Z", z}});
    const std::vector<std::string> var_names = {"X", "Y", "Z"};

    for (const Predicate& p : predicates) {
        for (const Predicate& q : predicates) {
            auto mgu = unify(p, q);
            bool ground_unifiable = false;
            for (const auto& sigma : sigmas) {
                bool equal = ground(p, sigma) == ground(q, sigma);
                ground_unifiable = ground_unifiable || equal;
                if (!equal)
                    continue;
                if (!mgu) {
                    why = "unify missed a ground unifier of " + render_predicate(p) + " and " +
                          render_predicate(q);
                    return false;
                }
                // The ground unifier must factor through the returned set.
                for (const std::string& a : var_names) {
                    Term rep_a = values_of(Variable(a), *mgu);
                    if (!rep_a.is_variable() && sigma.at(a) != rep_a) {
                        why = "bound class for " + a + " contradicts a ground unifier of " +
                              render_predicate(p) + " and " + render_predicate(q);
                        return false;
                    }
                    for (const std::string& b : var_names) {
                        if (values_of(Variable(b), *mgu) == rep_a &&
                            sigma.at(a) != sigma.at(b)) {
                            why = "shared class of " + a + " and " + b +
                                  " contradicts a ground unifier of " + render_predicate(p) +
                                  " and " + render_predicate(q);
                            return false;
                        }
                    }
                }
            }
            if (mgu) {
                Predicate left = apply(*mgu, p);
                Predicate right = apply(*mgu, q);
                if (left != right) {
                    why = "unifier fails to equalize " + render_predicate(p) + " and " +
                          render_predicate(q);
                    return false;
                }
                if (apply(*mgu, left) != left) {
                    why = "unifier is not idempotent on " + render_predicate(p);
                    return false;
                }
                if (!ground_unifiable) {
                    why = "unify invented a unifier for " + render_predicate(p) + " and " +
                          render_predicate(q);
                    return false;
                }
            }
        }
    }
    return true;
}

bool round_trips(std::string& why) {
    std::mt19937 rng(7177);
    for (int i = 0; i < 1000; ++i) {
        KnowledgeBase kb = testsupport::random_program(rng);
        std::string text = format_program(kb);
        auto parsed = parse_program(text);
        if (!std::holds_alternative<KnowledgeBase>(parsed)) {
            why = "formatted program " + std::to_string(i) + " failed to parse";
            return false;
        }
        const KnowledgeBase& back = std::get<KnowledgeBase>(parsed);
        if (back != kb) {
            why = "program " + std::to_string(i) + " changed across the round trip";
            return false;
        }
        if (format_program(back) != text) {
            why = "formatting program " + std::to_string(i) + " is not a fixpoint";
            return false;
        }
    }
    for (const char* name : {"it_service_desk.lkb", "medical.lkb"}) {
        KnowledgeBase kb = load(fixture(name));
        std::string text = format_program(kb);
        auto parsed = parse_program(text);
        if (!std::holds_alternative<KnowledgeBase>(parsed) ||
            std::get<KnowledgeBase>(parsed) != kb ||
            format_program(std::get<KnowledgeBase>(parsed)) != text) {
            why = std::string("fixture ") + name + " does not round-trip";
            return false;
        }
    }
    return true;
}

bool factor_normalization(std::string& why) {
    std::mt19937 rng(990011);
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_real_distribution<double> value_dist(0.001, 1000.0);
    std::uniform_real_distribution<double> scale_dist(0.01, 100.0);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> values(static_cast<std::size_t>(size_dist(rng)));
        for (double& v : values)
            v = value_dist(rng);
        auto factors = quality_factors(values, MetricDirection::LowerIsBetter);
        double total = 0;
        for (double f : factors)
            total += f;
        if (std::abs(total / static_cast<double>(factors.size()) - 1.0) > 1e-9) {
            why = "factor mean drifted from one on vector " + std::to_string(i);
            return false;
        }
        double k = scale_dist(rng);
        std::vector<double> scaled = values;
        for (double& v : scaled)
            v *= k;
        auto rescaled = quality_factors(scaled, MetricDirection::LowerIsBetter);
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (std::abs(rescaled[j] - factors[j]) > 1e-9) {
                why = "factors moved under scaling on vector " + std::to_string(i);
                return false;
            }
    }
    return true;
}

} // namespace

int main() {
    run_criterion(1, "Halstead measures match the reference comparison table", halstead_table);
    run_criterion(2, "cyclomatic numbers match the reference control flow graphs",
                  cyclomatic_table);
    run_criterion(3, "quality factors and rankings reproduce the reference study",
                  quality_study);
    run_criterion(4, "service desk and medical queries answer correctly and quickly",
                  reference_queries);
    run_criterion(5, "the diagnosis loop reproduces both reference consultations",
                  consultation_loops);
    run_criterion(6, "resolution agrees with a forward-chaining oracle on random programs",
                  oracle_agreement);
    run_criterion(7, "recursive ancestor chains resolve completely", ancestor_chain);
    run_criterion(8, "unification is sound, most general, and idempotent", unification_laws);
    run_criterion(9, "formatting and parsing form a faithful round trip", round_trips);
    run_criterion(10, "quality factor aggregation stays normalized and scale free",
                  factor_normalization);

    if (failures == 0)
        std::cout << "all criteria hold\n";
    else
        std::cout << failures << " criterion(s) failed\n";
    return failures;
}
