#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "hornlog/cli.hpp"

namespace {

hornlog::QueryOptions make_options(long long max_depth, long long max_solutions) {
    hornlog::QueryOptions options;
    options.max_depth = static_cast<int>(max_depth);
    if (max_solutions > 0)
        options.max_solutions = static_cast<std::size_t>(max_solutions);
    return options;
}

void add_query_flags(CLI::App* cmd, long long& max_depth, long long& max_solutions) {
    cmd->add_option("--max-depth", max_depth, "Resolution depth limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-solutions", max_solutions, "Stop after this many solutions")
        ->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    using namespace hornlog;

    CLI::App app{"Horn-clause knowledge bases: queries, diagnosis, software metrics"};
    app.require_subcommand(1);

    std::string kb_path;
    std::string query_text;
    std::vector<std::string> symptoms;
    std::string measurements_path;
    long long max_depth = QueryOptions{}.max_depth;
    long long max_solutions = 0;
    bool json = false;
    HalsteadCounts halstead_counts;
    CfgCounts cfg_counts;

    CLI::App* run = app.add_subcommand("run", "Run one query against a knowledge base");
    run->add_option("kb", kb_path, "Knowledge base file")->required();
    run->add_option("--query", query_text, "Query text, leading '?-' optional")->required();
    add_query_flags(run, max_depth, max_solutions);
    run->add_flag("--json", json, "Machine-readable output");

    CLI::App* repl = app.add_subcommand("repl", "Interactive query loop");
    repl->add_option("kb", kb_path, "Knowledge base file")->required();
    add_query_flags(repl, max_depth, max_solutions);

    CLI::App* diagnose =
        app.add_subcommand("diagnose", "Pairwise diagnosis loop over a symptom list");
    diagnose->add_option("kb", kb_path, "Knowledge base file")->required();
    diagnose->add_option("symptoms", symptoms, "Symptom names");
    add_query_flags(diagnose, max_depth, max_solutions);
    diagnose->add_flag("--json", json, "Machine-readable output");

    CLI::App* check = app.add_subcommand("check", "Parse a knowledge base and report on it");
    check->add_option("kb", kb_path, "Knowledge base file")->required();
    check->add_flag("--json", json, "Machine-readable output");

    CLI::App* metrics = app.add_subcommand("metrics", "Software metric reports");
    metrics->require_subcommand(1);

    CLI::App* halstead_cmd = metrics->add_subcommand("halstead", "Halstead measures from counts");
    halstead_cmd->add_option("--n1", halstead_counts.distinct_operators, "Distinct operators")
        ->required();
    halstead_cmd->add_option("--n2", halstead_counts.distinct_operands, "Distinct operands")
        ->required();
    halstead_cmd->add_option("--N1", halstead_counts.total_operators, "Total operators")
        ->required();
    halstead_cmd->add_option("--N2", halstead_counts.total_operands, "Total operands")
        ->required();
    halstead_cmd->add_flag("--json", json, "Machine-readable output");

    CLI::App* mccabe_cmd = metrics->add_subcommand("mccabe", "Cyclomatic number from CFG counts");
    mccabe_cmd->add_option("--edges", cfg_counts.edges, "Control-flow graph edges")->required();
    mccabe_cmd->add_option("--nodes", cfg_counts.nodes, "Control-flow graph nodes")->required();
    mccabe_cmd->add_option("--components", cfg_counts.components, "Connected components");
    mccabe_cmd->add_flag("--json", json, "Machine-readable output");

    CLI::App* quality_cmd =
        metrics->add_subcommand("quality", "Quality factors from a measurement file");
    quality_cmd->add_option("measurements", measurements_path, "Measurement JSON file")
        ->required();
    quality_cmd->add_flag("--json", json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? cli::kSuccess : cli::kUsageError;
    }

    QueryOptions options = make_options(max_depth, max_solutions);
    if (run->parsed())
        return cli::run_command(kb_path, query_text, options, json, std::cout, std::cerr);
    if (repl->parsed())
        return cli::repl_command(kb_path, options, std::cin, std::cout, std::cerr,
                                 isatty(STDIN_FILENO) != 0);
    if (diagnose->parsed())
        return cli::diagnose_command(kb_path, symptoms, options, json, std::cout, std::cerr);
    if (check->parsed())
        return cli::check_command(kb_path, json, std::cout, std::cerr);
    if (metrics->parsed()) {
        if (halstead_cmd->parsed())
            return cli::metrics_halstead_command(halstead_counts, json, std::cout, std::cerr);
        if (mccabe_cmd->parsed())
            return cli::metrics_mccabe_command(cfg_counts, json, std::cout, std::cerr);
        if (quality_cmd->parsed())
            return cli::metrics_quality_command(measurements_path, json, std::cout, std::cerr);
    }
    return cli::kUsageError;
}
