#include "evalkit/analytics.hpp"

#include <algorithm>
#include <cmath>

namespace evalkit::analytics {

std::vector<AccuracyRow> assessment_accuracy(
    const std::vector<Verdict>& verdicts,
    const std::map<std::string, int>& labels,
    const GroupKeyFn& group_key) {
    struct Acc {
        size_t agree = 0, total = 0, excluded = 0;
    };
    std::map<std::string, Acc> groups;
    for (const auto& v : verdicts) {
        auto& g = groups[group_key(v.instance_id)];
        auto it = labels.find(v.instance_id);
        if (it == labels.end()) {
            ++g.excluded;
            continue;
        }
        if (v.verdict == it->second) ++g.agree;
        ++g.total;
    }
    std::vector<AccuracyRow> out;
    for (const auto& [key, g] : groups) {
        AccuracyRow row;
        row.group = key;
        row.n = g.total;
        row.excluded = g.excluded;
        row.accuracy = g.total ? static_cast<double>(g.agree) / g.total : 0.0;
        out.push_back(row);
    }
    return out;
}

std::vector<AccuracyRow> task_accuracy(const std::vector<Verdict>& verdicts,
                                       const GroupKeyFn& group_key) {
    struct Acc {
        size_t correct = 0, total = 0;
    };
    std::map<std::string, Acc> groups;
    for (const auto& v : verdicts) {
        auto& g = groups[group_key(v.instance_id)];
        g.correct += static_cast<size_t>(v.verdict);
        ++g.total;
    }
    std::vector<AccuracyRow> out;
    for (const auto& [key, g] : groups) {
        AccuracyRow row;
        row.group = key;
        row.n = g.total;
        row.accuracy = g.total ? static_cast<double>(g.correct) / g.total : 0.0;
        out.push_back(row);
    }
    return out;
}

CorrectedAccuracy correct_for_human(double a_s, double rho) {
    if (a_s < 0.0 || a_s > 1.0 || rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("a_s and rho must lie in [0,1]");
    CorrectedAccuracy c;
    c.a_s = a_s;
    c.a_h = (2.0 * rho - 1.0) * a_s + 1.0 - rho;
    return c;
}

AgreementStats agreement_from_dual_labels(
    const std::vector<std::pair<int, int>>& synthetic_human_pairs) {
    AgreementStats s;
    s.n_annotations = synthetic_human_pairs.size();
    if (synthetic_human_pairs.empty()) return s;
    size_t agree = 0;
    for (const auto& [syn, hum] : synthetic_human_pairs)
        if (syn == hum) ++agree;
    s.rho = static_cast<double>(agree) / synthetic_human_pairs.size();
    return s;
}

std::vector<DeltaDecomposition> delta_decomposition(
    const std::vector<Verdict>& regex_verdicts,
    const std::map<std::string, int>& labels,
    const GroupKeyFn& group_key) {
    struct Acc {
        double sum_r = 0, sum_t = 0, parse_t = 0, match_diff = 0;
        size_t n = 0;
    };
    std::map<std::string, Acc> groups;
    for (const auto& v : regex_verdicts) {
        auto it = labels.find(v.instance_id);
        if (it == labels.end())
            throw ValidationError("no label for instance '" + v.instance_id + "'");
        double t = it->second;
        double r = v.verdict;
        auto& g = groups[group_key(v.instance_id)];
        ++g.n;
        g.sum_r += r;
        g.sum_t += t;
        if (v.parse_failed)
            g.parse_t += t;
        else
            g.match_diff += r - t;
    }
    std::vector<DeltaDecomposition> out;
    for (const auto& [key, g] : groups) {
        if (g.n == 0) continue;
        DeltaDecomposition d;
        d.group = key;
        d.delta_parse = -g.parse_t / g.n;
        d.delta_match = g.match_diff / g.n;
        d.delta_total = d.delta_parse + d.delta_match;
        out.push_back(d);
    }
    return out;
}

std::map<std::string, double> rank_models(
    const std::map<std::string, double>& per_model_accuracy,
    bool higher_is_better) {
    if (per_model_accuracy.empty())
        throw std::invalid_argument("cannot rank an empty model set");
    std::vector<std::pair<std::string, double>> items(per_model_accuracy.begin(),
                                                      per_model_accuracy.end());
    std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
        return higher_is_better ? a.second > b.second : a.second < b.second;
    });
    std::map<std::string, double> ranks;
    size_t i = 0;
    while (i < items.size()) {
        size_t j = i;
        while (j < items.size() && items[j].second == items[i].second) ++j;
        // positions i+1 .. j averaged over the tie block
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (size_t k = i; k < j; ++k) ranks[items[k].first] = avg;
        i = j;
    }
    return ranks;
}

std::map<std::string, double> rank_delta(
    const std::map<std::string, double>& rank_truth,
    const std::map<std::string, double>& rank_regex) {
    if (rank_truth.size() != rank_regex.size())
        throw ValidationError("rank maps cover different model sets");
    std::map<std::string, double> out;
    for (const auto& [model, rt] : rank_truth) {
        auto it = rank_regex.find(model);
        if (it == rank_regex.end())
            throw ValidationError("model '" + model + "' missing from one ranking");
        out[model] = rt - it->second;
    }
    return out;
}

std::map<std::string, double> rank_delta_avg(
    const std::vector<std::map<std::string, double>>& per_task_truth,
    const std::vector<std::map<std::string, double>>& per_task_regex) {
    if (per_task_truth.size() != per_task_regex.size())
        throw ValidationError("task counts differ between rankings");
    std::map<std::string, double> sums;
    for (size_t t = 0; t < per_task_truth.size(); ++t)
        for (const auto& [model, d] : rank_delta(per_task_truth[t], per_task_regex[t]))
            sums[model] += d;
    for (auto& [model, s] : sums) s /= static_cast<double>(per_task_truth.size());
    return sums;
}

BordaResult borda_count(const std::vector<std::map<std::string, double>>& per_task_ranks) {
    BordaResult result;
    if (per_task_ranks.empty()) return result;
    const auto& first = per_task_ranks.front();
    double m = static_cast<double>(first.size());
    for (const auto& [model, _] : first) result.points[model] = 0.0;
    for (const auto& task : per_task_ranks) {
        if (task.size() != first.size())
            throw ValidationError("inconsistent model sets across tasks");
        for (const auto& [model, rank] : task) {
            auto it = result.points.find(model);
            if (it == result.points.end())
                throw ValidationError("inconsistent model sets across tasks");
            it->second += m - rank;
        }
    }
    result.ordering.reserve(result.points.size());
    for (const auto& [model, _] : result.points) result.ordering.push_back(model);
    std::sort(result.ordering.begin(), result.ordering.end(),
              [&](const std::string& a, const std::string& b) {
                  double pa = result.points.at(a), pb = result.points.at(b);
                  if (pa != pb) return pa > pb;
                  return a < b;
              });
    return result;
}

CostEstimate flops_estimate(double model_params, double generated_tokens) {
    if (model_params < 0 || generated_tokens < 0)
        throw std::invalid_argument("counts must be nonnegative");
    CostEstimate c;
    c.model_params = model_params;
    c.generated_tokens = generated_tokens;
    c.flops = 2.0 * model_params * generated_tokens;
    return c;
}

std::vector<std::pair<double, double>> threshold_sweep(
    const std::vector<judge::EncoderScore>& scores,
    const std::map<std::string, int>& labels,
    const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (double theta : grid) {
        if (theta < 0.0 || theta > 1.0)
            throw std::invalid_argument("grid values must lie in [0,1]");
        size_t agree = 0, total = 0;
        for (const auto& s : scores) {
            auto it = labels.find(s.instance_id);
            if (it == labels.end())
                throw ValidationError("no label for instance '" + s.instance_id + "'");
            int pred = s.probability >= theta ? 1 : 0;
            if (pred == it->second) ++agree;
            ++total;
        }
        curve.emplace_back(theta, total ? static_cast<double>(agree) / total : 0.0);
    }
    return curve;
}

}  // namespace evalkit::analytics
