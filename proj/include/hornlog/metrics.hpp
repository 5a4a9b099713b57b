#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hornlog {

// ============================================================================
// Halstead
// ============================================================================

/// Raw token tallies: distinct operators/operands (n1, n2) and total
/// operators/operands (N1, N2).
struct HalsteadCounts {
    long long distinct_operators = 0; // n1
    long long distinct_operands = 0;  // n2
    long long total_operators = 0;    // N1
    long long total_operands = 0;     // N2
};

/// Derived Halstead measures, kept unrounded. duration_s divides workload by
/// the Stroud number of 18 elementary discriminations per second.
struct HalsteadReport {
    long long length = 0;     // N  = N1 + N2
    long long vocabulary = 0; // n  = n1 + n2
    double scope = 0;         // U  = N * log2(n)
    double difficulty = 0;    // S  = (n1 / 2) * (N2 / n2)
    double workload = 0;      // A  = S * U
    double duration_s = 0;    // D  = A / 18
};

/// Presentation view: every measure rounded to the nearest integer.
struct HalsteadRounded {
    long long length = 0;
    long long vocabulary = 0;
    long long scope = 0;
    long long difficulty = 0;
    long long workload = 0;
    long long duration_s = 0;
};

/// Computes the report. Throws std::domain_error when a measure is undefined
/// (no operands, empty vocabulary) or the counts are inconsistent (negative,
/// or distinct exceeding total).
HalsteadReport halstead(const HalsteadCounts& counts);
HalsteadRounded rounded(const HalsteadReport& report);

// ============================================================================
// McCabe
// ============================================================================

/// Control-flow graph tallies; components defaults to one connected program.
struct CfgCounts {
    long long edges = 0;
    long long nodes = 0;
    long long components = 1;
};

struct CyclomaticResult {
    long long value = 0;
    std::optional<std::string> warning; // set when value < 1 (malformed CFG counts)
};

/// v(G) = edges - nodes + 2 * components.
CyclomaticResult cyclomatic(const CfgCounts& counts);

// ============================================================================
// Quality aggregation
// ============================================================================

enum class MetricDirection { LowerIsBetter, HigherIsBetter };

/// Per-approach quality factors for one metric: each value divided by the
/// mean (lower is better), or the reciprocal of that ratio (higher is
/// better). Throws std::domain_error on an empty list or values <= 0.
std::vector<double> quality_factors(const std::vector<double>& values, MetricDirection direction);

/// Mean of one approach's factors across metrics (Q_A).
double artifact_quality(const std::vector<double>& factors);

/// Mean of one approach's artifact scores across artifacts (Q_P).
double approach_quality(const std::vector<double>& artifact_scores);

/// A complete measurement table: every (artifact, approach, metric) cell
/// holds an unrounded positive value. Orders are meaningful and preserved.
struct QualitySheet {
    std::vector<std::string> approaches;
    std::vector<std::string> artifacts;
    std::vector<std::pair<std::string, MetricDirection>> metrics;
    std::map<std::tuple<std::string, std::string, std::string>, double>
        values; // key: (artifact, approach, metric)

    void set(const std::string& artifact, const std::string& approach, const std::string& metric,
             double value);
    const double* find(const std::string& artifact, const std::string& approach,
                       const std::string& metric) const;
};

/// Factors, Q_A, and Q_P for a sheet, all aligned with the sheet's orders.
struct QualityReport {
    std::vector<std::string> approaches;
    std::vector<std::string> artifacts;
    std::vector<std::string> metrics;
    std::vector<double> raw;             // [artifact][metric][approach]
    std::vector<double> factors;         // [artifact][metric][approach]
    std::vector<double> artifact_scores; // [artifact][approach] (Q_A)
    std::vector<double> approach_scores; // [approach]           (Q_P)

    double raw_value(std::size_t artifact, std::size_t metric, std::size_t approach) const;
    double factor(std::size_t artifact, std::size_t metric, std::size_t approach) const;
    double artifact_score(std::size_t artifact, std::size_t approach) const;
    double approach_score(std::size_t approach) const;
};

/// Runs the whole aggregation from unrounded cell values. Throws
/// std::invalid_argument on an incomplete sheet (message lists every missing
/// cell) and std::domain_error on non-positive values.
QualityReport quality_report(const QualitySheet& sheet);

/// Loads a sheet from the measurement JSON document: `metrics` maps metric
/// names to directions; `artifacts` maps artifact -> approach -> either
/// direct metric numbers or raw `halstead` / `cfg` count objects, which are
/// expanded through halstead() and cyclomatic() before aggregation. Object
/// key order is preserved. Throws std::invalid_argument on malformed input.
QualitySheet quality_sheet_from_json(const std::string& json_text);

} // namespace hornlog
