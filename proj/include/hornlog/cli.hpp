#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hornlog/engine.hpp"
#include "hornlog/metrics.hpp"
#include "hornlog/model.hpp"

namespace hornlog::cli {

/// Process exit codes shared by every subcommand.
enum ExitStatus : int {
    kSuccess = 0,      // query proved / command succeeded
    kNoSolution = 1,   // query completed with no solutions
    kUsageError = 2,   // bad invocation or parse failure
    kRuntimeError = 3, // depth limit or other runtime failure
};

int run_command(const std::string& kb_path, const std::string& query_text,
                const QueryOptions& options, bool json, std::ostream& out, std::ostream& err);

int repl_command(const std::string& kb_path, const QueryOptions& options, std::istream& in,
                 std::ostream& out, std::ostream& err, bool show_prompt);

int diagnose_command(const std::string& kb_path, const std::vector<std::string>& symptoms,
                     const QueryOptions& options, bool json, std::ostream& out,
                     std::ostream& err);

int check_command(const std::string& kb_path, bool json, std::ostream& out, std::ostream& err);

int metrics_halstead_command(const HalsteadCounts& counts, bool json, std::ostream& out,
                             std::ostream& err);

int metrics_mccabe_command(const CfgCounts& counts, bool json, std::ostream& out,
                           std::ostream& err);

int metrics_quality_command(const std::string& measurements_path, bool json, std::ostream& out,
                            std::ostream& err);

/// The diagnosis loop the medical system runs on top of query(): every round
/// pairs each original symptom with each entry of the current check list,
/// asks diagnosis(s1, s2, D), appends all answers to the output and to the
/// next check list (deduplicated, first appearance wins), and stops once a
/// round learns nothing new. Duplicate findings stay in the output.
std::vector<std::string> diagnose_harness(const KnowledgeBase& kb,
                                          const std::vector<std::string>& symptoms,
                                          const QueryOptions& options = {});

} // namespace hornlog::cli
