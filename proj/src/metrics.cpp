#include "hornlog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace hornlog {

// Expanded metric names for raw count objects in measurement documents.
namespace {
constexpr const char* kProgramLength = "program_length";
constexpr const char* kVocabulary = "vocabulary";
constexpr const char* kProgramScope = "program_scope";
constexpr const char* kDifficulty = "difficulty";
constexpr const char* kWorkload = "workload";
constexpr const char* kDuration = "duration";
constexpr const char* kCyclomatic = "cyclomatic_number";
} // namespace

HalsteadReport halstead(const HalsteadCounts& c) {
    if (c.distinct_operators < 0 || c.distinct_operands < 0 || c.total_operators < 0 ||
        c.total_operands < 0)
        throw std::domain_error("halstead counts must be non-negative");
    if (c.distinct_operators > c.total_operators || c.distinct_operands > c.total_operands)
        throw std::domain_error("distinct counts cannot exceed total counts");
    if (c.distinct_operands == 0)
        throw std::domain_error("difficulty is undefined without operands (n2 = 0)");
    if (c.distinct_operators + c.distinct_operands == 0)
        throw std::domain_error("program scope is undefined on an empty vocabulary (n = 0)");

    HalsteadReport r;
    r.length = c.total_operators + c.total_operands;
    r.vocabulary = c.distinct_operators + c.distinct_operands;
    r.scope = static_cast<double>(r.length) * std::log2(static_cast<double>(r.vocabulary));
    r.difficulty = (static_cast<double>(c.distinct_operators) / 2.0) *
                   (static_cast<double>(c.total_operands) /
                    static_cast<double>(c.distinct_operands));
    r.workload = r.difficulty * r.scope;
    r.duration_s = r.workload / 18.0;
    return r;
}

HalsteadRounded rounded(const HalsteadReport& r) {
    return HalsteadRounded{r.length,
                           r.vocabulary,
                           std::llround(r.scope),
                           std::llround(r.difficulty),
                           std::llround(r.workload),
                           std::llround(r.duration_s)};
}

CyclomaticResult cyclomatic(const CfgCounts& c) {
    if (c.edges < 0 || c.nodes < 0)
        throw std::domain_error("edge and node counts must be non-negative");
    if (c.components < 1)
        throw std::domain_error("a control-flow graph has at least one component");
    CyclomaticResult result;
    result.value = c.edges - c.nodes + 2 * c.components;
    if (result.value < 1)
        result.warning = "cyclomatic number below 1 (" + std::to_string(result.value) +
                         "): edge/node counts do not describe a well-formed control-flow graph";
    return result;
}

namespace {

double mean(const std::vector<double>& values, const char* what) {
    if (values.empty())
        throw std::domain_error(std::string(what) + " of an empty list is undefined");
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

} // namespace

std::vector<double> quality_factors(const std::vector<double>& values,
                                    MetricDirection direction) {
    for (double v : values)
        if (!(v > 0))
            throw std::domain_error("quality factors need strictly positive metric values");
    double avg = mean(values, "quality factor");
    std::vector<double> factors;
    factors.reserve(values.size());
    for (double v : values)
        factors.push_back(direction == MetricDirection::LowerIsBetter ? v / avg : avg / v);
    return factors;
}

double artifact_quality(const std::vector<double>& factors) {
    return mean(factors, "artifact quality");
}

double approach_quality(const std::vector<double>& artifact_scores) {
    return mean(artifact_scores, "approach quality");
}

void QualitySheet::set(const std::string& artifact, const std::string& approach,
                       const std::string& metric, double value) {
    values[{artifact, approach, metric}] = value;
}

const double* QualitySheet::find(const std::string& artifact, const std::string& approach,
                                 const std::string& metric) const {
    auto it = values.find({artifact, approach, metric});
    return it == values.end() ? nullptr : &it->second;
}

double QualityReport::raw_value(std::size_t artifact, std::size_t metric,
                                std::size_t approach) const {
    return raw[(artifact * metrics.size() + metric) * approaches.size() + approach];
}

double QualityReport::factor(std::size_t artifact, std::size_t metric,
                             std::size_t approach) const {
    return factors[(artifact * metrics.size() + metric) * approaches.size() + approach];
}

double QualityReport::artifact_score(std::size_t artifact, std::size_t approach) const {
    return artifact_scores[artifact * approaches.size() + approach];
}

double QualityReport::approach_score(std::size_t approach) const {
    return approach_scores[approach];
}

QualityReport quality_report(const QualitySheet& sheet) {
    if (sheet.approaches.empty() || sheet.artifacts.empty() || sheet.metrics.empty())
        throw std::invalid_argument("quality sheet needs approaches, artifacts, and metrics");

    std::string missing;
    for (const auto& artifact : sheet.artifacts)
        for (const auto& approach : sheet.approaches)
            for (const auto& [metric, direction] : sheet.metrics)
                if (!sheet.find(artifact, approach, metric))
                    missing += "\n  " + artifact + " / " + approach + " / " + metric;
    if (!missing.empty())
        throw std::invalid_argument("quality sheet is missing cells:" + missing);

    QualityReport report;
    report.approaches = sheet.approaches;
    report.artifacts = sheet.artifacts;
    for (const auto& [metric, direction] : sheet.metrics)
        report.metrics.push_back(metric);

    const std::size_t n_app = sheet.approaches.size();
    report.raw.resize(sheet.artifacts.size() * sheet.metrics.size() * n_app);
    report.factors.resize(report.raw.size());
    report.artifact_scores.resize(sheet.artifacts.size() * n_app);
    report.approach_scores.assign(n_app, 0.0);

    for (std::size_t ai = 0; ai < sheet.artifacts.size(); ++ai) {
        for (std::size_t mi = 0; mi < sheet.metrics.size(); ++mi) {
            const auto& [metric, direction] = sheet.metrics[mi];
            std::vector<double> row;
            row.reserve(n_app);
            for (const auto& approach : sheet.approaches)
                row.push_back(*sheet.find(sheet.artifacts[ai], approach, metric));
            std::vector<double> factors = quality_factors(row, direction);
            for (std::size_t ki = 0; ki < n_app; ++ki) {
                report.raw[(ai * sheet.metrics.size() + mi) * n_app + ki] = row[ki];
                report.factors[(ai * sheet.metrics.size() + mi) * n_app + ki] = factors[ki];
            }
        }
        for (std::size_t ki = 0; ki < n_app; ++ki) {
            std::vector<double> per_metric;
            per_metric.reserve(sheet.metrics.size());
            for (std::size_t mi = 0; mi < sheet.metrics.size(); ++mi)
                per_metric.push_back(report.factor(ai, mi, ki));
            report.artifact_scores[ai * n_app + ki] = artifact_quality(per_metric);
        }
    }
    for (std::size_t ki = 0; ki < n_app; ++ki) {
        std::vector<double> per_artifact;
        per_artifact.reserve(sheet.artifacts.size());
        for (std::size_t ai = 0; ai < sheet.artifacts.size(); ++ai)
            per_artifact.push_back(report.artifact_score(ai, ki));
        report.approach_scores[ki] = approach_quality(per_artifact);
    }
    return report;
}

namespace {

using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void bad_document(const std::string& detail) {
    throw std::invalid_argument("invalid measurement document: " + detail);
}

double number_field(const OrderedJson& object, const char* key, const std::string& where) {
    if (!object.contains(key) || !object[key].is_number())
        bad_document(where + " needs a numeric '" + key + "' field");
    return object[key].get<double>();
}

// Derives the canonical metric names from one approach's cell object.
std::map<std::string, double> expand_cell(const OrderedJson& cell, const std::string& where) {
    std::map<std::string, double> out;
    for (const auto& [key, value] : cell.items()) {
        if (key == "halstead") {
            HalsteadCounts counts;
            counts.distinct_operators =
                static_cast<long long>(number_field(value, "n1", where + ".halstead"));
            counts.distinct_operands =
                static_cast<long long>(number_field(value, "n2", where + ".halstead"));
            counts.total_operators =
                static_cast<long long>(number_field(value, "N1", where + ".halstead"));
            counts.total_operands =
                static_cast<long long>(number_field(value, "N2", where + ".halstead"));
            HalsteadReport report = halstead(counts);
            out[kProgramLength] = static_cast<double>(report.length);
            out[kVocabulary] = static_cast<double>(report.vocabulary);
            out[kProgramScope] = report.scope;
            out[kDifficulty] = report.difficulty;
            out[kWorkload] = report.workload;
            out[kDuration] = report.duration_s;
        } else if (key == "cfg") {
            CfgCounts counts;
            counts.edges = static_cast<long long>(number_field(value, "edges", where + ".cfg"));
            counts.nodes = static_cast<long long>(number_field(value, "nodes", where + ".cfg"));
            if (value.contains("components"))
                counts.components =
                    static_cast<long long>(number_field(value, "components", where + ".cfg"));
            out[kCyclomatic] = static_cast<double>(cyclomatic(counts).value);
        } else if (value.is_number()) {
            out[key] = value.get<double>();
        } else {
            bad_document(where + "." + key + " must be a number or a halstead/cfg count object");
        }
    }
    return out;
}

} // namespace

QualitySheet quality_sheet_from_json(const std::string& json_text) {
    OrderedJson doc;
    try {
        doc = OrderedJson::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        bad_document(e.what());
    }
    if (!doc.is_object() || !doc.contains("metrics") || !doc.contains("artifacts"))
        bad_document("top level must be an object with 'metrics' and 'artifacts'");

    QualitySheet sheet;
    for (const auto& [name, direction] : doc["metrics"].items()) {
        if (!direction.is_string())
            bad_document("metric '" + name + "' direction must be a string");
        std::string d = direction.get<std::string>();
        if (d == "lower-is-better")
            sheet.metrics.emplace_back(name, MetricDirection::LowerIsBetter);
        else if (d == "higher-is-better")
            sheet.metrics.emplace_back(name, MetricDirection::HigherIsBetter);
        else
            bad_document("metric '" + name + "' has unknown direction '" + d +
                         "' (use lower-is-better or higher-is-better)");
    }
    if (sheet.metrics.empty())
        bad_document("'metrics' must declare at least one metric");
    if (!doc["artifacts"].is_object() || doc["artifacts"].empty())
        bad_document("'artifacts' must be a non-empty object");

    for (const auto& [artifact, approaches] : doc["artifacts"].items()) {
        sheet.artifacts.push_back(artifact);
        if (!approaches.is_object() || approaches.empty())
            bad_document("artifact '" + artifact + "' must map approaches to measurements");
        for (const auto& [approach, cell] : approaches.items()) {
            if (std::find(sheet.approaches.begin(), sheet.approaches.end(), approach) ==
                sheet.approaches.end())
                sheet.approaches.push_back(approach);
            if (!cell.is_object())
                bad_document("artifact '" + artifact + "' approach '" + approach +
                             "' must be an object");
            auto expanded = expand_cell(cell, artifact + "/" + approach);
            for (const auto& [metric, direction] : sheet.metrics) {
                auto it = expanded.find(metric);
                if (it != expanded.end())
                    sheet.set(artifact, approach, metric, it->second);
            }
        }
    }
    return sheet;
}

} // namespace hornlog
