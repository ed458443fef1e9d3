/// @file analytics.hpp
/// @brief Accuracy statistics, human-agreement correction, error
/// decomposition, rank aggregation, and cost estimates.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "evalkit/judge.hpp"
#include "evalkit/types.hpp"

namespace evalkit::analytics {

struct AgreementStats {
    double rho = 1.0;       // agreement rate between synthetic and human labels
    size_t n_annotations = 0;
};

struct CorrectedAccuracy {
    double a_s = 0.0;  // accuracy against synthetic labels
    double a_h = 0.0;  // estimated accuracy against human labels
};

struct DeltaDecomposition {
    std::string group;
    double delta_total = 0.0;
    double delta_parse = 0.0;  // always <= 0
    double delta_match = 0.0;
};

struct CostEstimate {
    double model_params = 0.0;
    double generated_tokens = 0.0;
    double flops = 0.0;  // 2 * params * tokens
};

using GroupKeyFn = std::function<std::string(const std::string& instance_id)>;

struct AccuracyRow {
    std::string group;
    double accuracy = 0.0;
    size_t n = 0;
    size_t excluded = 0;  // instances skipped for missing labels
};

/// Agreement rate between verdicts and binary labels, per group.
/// Instances without a label are excluded and tallied.
std::vector<AccuracyRow> assessment_accuracy(
    const std::vector<Verdict>& verdicts,
    const std::map<std::string, int>& labels,
    const GroupKeyFn& group_key);

/// Fraction of instances judged correct, per group.
std::vector<AccuracyRow> task_accuracy(const std::vector<Verdict>& verdicts,
                                       const GroupKeyFn& group_key);

/// a_h = (2*rho - 1) * a_s + 1 - rho
CorrectedAccuracy correct_for_human(double a_s, double rho);

/// Agreement rate between synthetic and human labels on dual-labeled
/// instances (both labels present).
AgreementStats agreement_from_dual_labels(
    const std::vector<std::pair<int, int>>& synthetic_human_pairs);

/// Splits the regex-vs-truth accuracy delta into a parse-failure part
/// and a post-parse matching part: delta_total = delta_parse + delta_match.
std::vector<DeltaDecomposition> delta_decomposition(
    const std::vector<Verdict>& regex_verdicts,
    const std::map<std::string, int>& labels,
    const GroupKeyFn& group_key);

/// Rank 1 = best; exact ties get the average of their covered positions.
std::map<std::string, double> rank_models(
    const std::map<std::string, double>& per_model_accuracy,
    bool higher_is_better = true);

/// delta = rank_truth - rank_regex, per model. Positive renders as an
/// upward arrow (the regex leaderboard places the model higher than the
/// truth ranking does).
std::map<std::string, double> rank_delta(
    const std::map<std::string, double>& rank_truth,
    const std::map<std::string, double>& rank_regex);

/// Averages signed per-task deltas per model.
std::map<std::string, double> rank_delta_avg(
    const std::vector<std::map<std::string, double>>& per_task_truth,
    const std::vector<std::map<std::string, double>>& per_task_regex);

struct BordaResult {
    std::map<std::string, double> points;
    std::vector<std::string> ordering;  // descending points, ties lexicographic
};

/// Per task a model at rank k earns M - k points; fractional for
/// tie-averaged ranks; summed across tasks.
BordaResult borda_count(const std::vector<std::map<std::string, double>>& per_task_ranks);

CostEstimate flops_estimate(double model_params, double generated_tokens);

/// Accuracy of (probability >= theta) vs labels, in grid order.
std::vector<std::pair<double, double>> threshold_sweep(
    const std::vector<judge::EncoderScore>& scores,
    const std::map<std::string, int>& labels,
    const std::vector<double>& grid);

}  // namespace evalkit::analytics
