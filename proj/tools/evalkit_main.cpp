// evalkit CLI: evaluation runs, labeling, analytics, sweeps, reports.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evalkit/analytics.hpp"
#include "evalkit/config.hpp"
#include "evalkit/corpus.hpp"
#include "evalkit/extract.hpp"
#include "evalkit/judge.hpp"
#include "evalkit/match.hpp"
#include "evalkit/report.hpp"

namespace fs = std::filesystem;
using namespace evalkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitTransport = 3;

std::string timestamp_utc() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::stoll(epoch));
    else
        t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    unsigned seed = 0;
    std::string replay_log;
};

config::EngineConfig load_config(const GlobalOpts& g,
                                 const std::map<std::string, std::string>& overrides) {
    config::EngineConfig cfg;
    if (!g.config_path.empty()) config::apply(cfg, config::parse_flat_file(g.config_path));
    config::apply(cfg, overrides);
    cfg.validate();
    return cfg;
}

std::map<std::string, int> labels_of(const std::vector<EvalInstance>& instances) {
    std::map<std::string, int> labels;
    for (const auto& inst : instances)
        if (inst.label) labels[inst.id] = *inst.label;
    return labels;
}

std::map<std::string, const EvalInstance*> index_of(
    const std::vector<EvalInstance>& instances) {
    std::map<std::string, const EvalInstance*> idx;
    for (const auto& inst : instances) idx[inst.id] = &inst;
    return idx;
}

judge::FallbackFn make_fallback(const config::EngineConfig& cfg, const judge::ChatFn& chat,
                                const judge::ScoreFn& score) {
    if (cfg.hybrid_fallback == "llm-judge") {
        return [&cfg, chat](const EvalInstance& inst) {
            return judge::llm_judge_verdict(inst, chat, cfg.prompt_mode, nullptr,
                                            cfg.parse_fail_policy);
        };
    }
    return [&cfg, score](const EvalInstance& inst) {
        auto s = judge::encoder_judge_score(inst, score, cfg.encoder_include_question);
        return judge::encoder_verdict(s, cfg.encoder_theta);
    };
}

int cmd_evaluate(const GlobalOpts& g, const std::string& instances_path,
                 const std::string& method_name,
                 const std::map<std::string, std::string>& overrides) {
    auto cfg = load_config(g, overrides);
    Method method = method_from_string(method_name);

    auto instances = corpus::load_instances(instances_path);
    std::vector<std::string> ids;
    for (const auto& inst : instances) ids.push_back(inst.id);

    fs::create_directories(fs::path(g.out_dir) / "verdicts");

    RunManifest manifest;
    manifest.input_digest = corpus::content_digest(instances_path);
    manifest.run_id = method_name + "-" + manifest.input_digest;
    manifest.created_at = timestamp_utc();
    manifest.method_config = cfg.to_json();
    manifest.method_config["method"] = to_string(method);
    manifest.method_config["seed"] = g.seed;

    std::vector<Verdict> verdicts;
    std::vector<judge::JudgeExchange> exchanges;

    judge::ChatFn chat;
    judge::ScoreFn score;
    bool needs_chat = method == Method::kLlmJudge ||
                      (method == Method::kHybrid && cfg.hybrid_fallback == "llm-judge");
    bool needs_score = method == Method::kEncoderJudge ||
                       (method == Method::kHybrid && cfg.hybrid_fallback != "llm-judge");
    if (needs_chat) {
        if (!g.replay_log.empty())
            chat = judge::make_replay_chat(judge::load_exchange_log(g.replay_log));
        else if (!cfg.endpoint.base_url.empty())
            chat = judge::make_http_chat(cfg.endpoint, cfg.prompt_mode);
        else
            throw std::invalid_argument("method requires endpoint_base_url or --replay");
    }
    if (needs_score) {
        if (cfg.endpoint.base_url.empty())
            throw std::invalid_argument("method requires endpoint_base_url");
        score = judge::make_http_score(cfg.endpoint);
    }

    switch (method) {
        case Method::kRegex:
            for (const auto& inst : instances)
                verdicts.push_back(match::regex_method_verdict(inst, cfg.match));
            break;
        case Method::kLlmJudge:
            verdicts = judge::run_concurrent(
                instances, cfg.endpoint.in_flight_limit,
                [&](const EvalInstance& inst, judge::JudgeExchange* ex) {
                    return judge::llm_judge_verdict(inst, chat, cfg.prompt_mode, ex,
                                                    cfg.parse_fail_policy);
                },
                &exchanges);
            break;
        case Method::kEncoderJudge:
            verdicts = judge::run_concurrent(
                instances, cfg.endpoint.in_flight_limit,
                [&](const EvalInstance& inst, judge::JudgeExchange*) {
                    auto s = judge::encoder_judge_score(inst, score,
                                                        cfg.encoder_include_question);
                    return judge::encoder_verdict(s, cfg.encoder_theta);
                });
            break;
        case Method::kHybrid: {
            auto fallback = make_fallback(cfg, chat, score);
            verdicts = judge::run_concurrent(
                instances, cfg.endpoint.in_flight_limit,
                [&](const EvalInstance& inst, judge::JudgeExchange*) {
                    return judge::hybrid_verdict(inst, cfg.match, fallback);
                });
            break;
        }
    }

    fs::path vpath = fs::path(g.out_dir) / "verdicts" / (method_name + ".jsonl");
    corpus::persist_verdicts(verdicts, manifest, vpath, ids);
    if (!exchanges.empty())
        judge::write_exchange_log(exchanges,
                                  fs::path(g.out_dir) / "verdicts" /
                                      (method_name + ".exchanges.jsonl"));
    std::cout << "wrote " << verdicts.size() << " verdicts to " << vpath.string() << "\n";
    return kExitOk;
}

int cmd_label(const GlobalOpts& g, const std::string& instances_path,
              const std::map<std::string, std::string>& overrides) {
    auto cfg = load_config(g, overrides);
    auto instances = corpus::load_instances(instances_path);

    judge::ChatFn chat;
    if (!g.replay_log.empty())
        chat = judge::make_replay_chat(judge::load_exchange_log(g.replay_log));
    else if (!cfg.endpoint.base_url.empty())
        chat = judge::make_http_chat(cfg.endpoint, judge::PromptMode::kLong);
    else
        throw std::invalid_argument("label requires endpoint_base_url or --replay");

    std::vector<judge::JudgeExchange> exchanges;
    std::vector<std::string> skipped;
    auto verdicts = judge::run_concurrent(
        instances, cfg.endpoint.in_flight_limit,
        [&](const EvalInstance& inst, judge::JudgeExchange* ex) {
            return judge::llm_judge_verdict(inst, chat, judge::PromptMode::kLong, ex,
                                            judge::ParseFailPolicy::kScoreZero);
        },
        &exchanges);

    std::map<std::string, const judge::JudgeExchange*> ex_by_id;
    for (const auto& ex : exchanges) ex_by_id[ex.instance_id] = &ex;

    for (size_t i = 0; i < instances.size(); ++i) {
        auto& inst = instances[i];
        auto it = ex_by_id.find(inst.id);
        bool parse_error = it == ex_by_id.end() || it->second->parse_error;
        if (parse_error) {
            skipped.push_back(inst.id);
            inst.label.reset();
            inst.label_source.reset();
            continue;
        }
        if (inst.label) inst.extra["previous_label"] = *inst.label;
        inst.label = verdicts[i].verdict;
        inst.label_source = "synthetic";
    }

    fs::create_directories(g.out_dir);
    fs::path lpath = fs::path(g.out_dir) / "labeled.jsonl";
    corpus::persist_instances(instances, lpath);
    judge::write_exchange_log(exchanges, fs::path(g.out_dir) / "label.exchanges.jsonl");
    if (!skipped.empty()) {
        std::string skip_report;
        for (const auto& id : skipped) skip_report += id + "\n";
        report::write_file(fs::path(g.out_dir) / "label.skipped.txt", skip_report);
        std::cout << skipped.size() << " instance(s) skipped (unparsable judge reply)\n";
    }
    std::cout << "wrote " << lpath.string() << "\n";
    return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    if (size_t colon = spec.find(':'); colon != std::string::npos) {
        size_t colon2 = spec.find(':', colon + 1);
        if (colon2 == std::string::npos)
            throw std::invalid_argument("grid spec must be lo:hi:step or a comma list");
        double lo = std::stod(spec.substr(0, colon));
        double hi = std::stod(spec.substr(colon + 1, colon2 - colon - 1));
        double step = std::stod(spec.substr(colon2 + 1));
        if (step <= 0) throw std::invalid_argument("grid step must be positive");
        for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(std::min(v, hi));
    } else {
        std::string cur;
        for (char c : spec + ",") {
            if (c == ',') {
                if (!cur.empty()) grid.push_back(std::stod(cur));
                cur.clear();
            } else cur += c;
        }
    }
    return grid;
}

struct AnalyzeArgs {
    std::vector<std::string> verdict_files;
    std::string instances_path;
    std::vector<std::string> analyses;
    std::string group_by = "model,task";
    double model_params = 0;
    double generated_tokens = 0;
    std::string agreement_values;  // "cat=rate,..." overrides dual-label computation
    bool markdown = false;         // percent-markdown in addition to CSV
};

analytics::GroupKeyFn make_group_key(const std::string& group_by,
                                     const std::map<std::string, const EvalInstance*>& idx) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : group_by + ",") {
        if (c == ',') {
            if (!cur.empty()) fields.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    return [fields, &idx](const std::string& id) {
        auto it = idx.find(id);
        if (it == idx.end())
            throw ValidationError("verdict references unknown instance '" + id + "'");
        const EvalInstance& inst = *it->second;
        std::string key;
        for (const auto& f : fields) {
            if (!key.empty()) key += "|";
            if (f == "model") key += inst.model_id;
            else if (f == "task") key += inst.task;
            else if (f == "category") key += to_string(inst.category);
            else throw std::invalid_argument("unknown group field: " + f);
        }
        return key;
    };
}

void emit(const GlobalOpts& g, const std::string& name, const report::Table& csv_table,
          const std::optional<report::Table>& md_table) {
    fs::path dir = fs::path(g.out_dir) / "reports";
    fs::create_directories(dir);
    report::write_file(dir / (name + ".csv"), report::to_csv(csv_table));
    if (md_table)
        report::write_file(dir / (name + ".md"), report::to_markdown(*md_table));
    std::cout << "wrote " << (dir / (name + ".csv")).string() << "\n";
}

int cmd_analyze(const GlobalOpts& g, const AnalyzeArgs& args) {
    std::vector<EvalInstance> instances;
    if (!args.instances_path.empty())
        instances = corpus::load_instances(args.instances_path);
    auto idx = index_of(instances);
    auto labels = labels_of(instances);
    auto key = make_group_key(args.group_by, idx);

    std::vector<Verdict> verdicts;
    for (const auto& vf : args.verdict_files)
        for (auto& v : corpus::load_verdicts(vf)) verdicts.push_back(std::move(v));

    for (const auto& analysis : args.analyses) {
        if (analysis == "accuracy") {
            auto rows = analytics::assessment_accuracy(verdicts, labels, key);
            emit(g, "assessment_accuracy", report::accuracy_table(rows, args.group_by, false),
                 args.markdown ? std::optional(report::accuracy_table(rows, args.group_by, true))
                               : std::nullopt);
        } else if (analysis == "task-accuracy") {
            auto rows = analytics::task_accuracy(verdicts, key);
            emit(g, "task_accuracy", report::accuracy_table(rows, args.group_by, false),
                 args.markdown ? std::optional(report::accuracy_table(rows, args.group_by, true))
                               : std::nullopt);
        } else if (analysis == "failure-rates") {
            std::vector<Verdict> regex_only;
            for (const auto& v : verdicts)
                if (v.method == Method::kRegex) regex_only.push_back(v);
            auto rates = extract::failure_rate(
                regex_only, [&](const Verdict& v) { return key(v.instance_id); });
            emit(g, "failure_rates", report::failure_rate_table(rates, false),
                 args.markdown ? std::optional(report::failure_rate_table(rates, true))
                               : std::nullopt);
        } else if (analysis == "delta") {
            std::vector<Verdict> regex_only;
            for (const auto& v : verdicts)
                if (v.method == Method::kRegex) regex_only.push_back(v);
            auto rows = analytics::delta_decomposition(regex_only, labels, key);
            emit(g, "delta_decomposition", report::delta_table(rows, false),
                 args.markdown ? std::optional(report::delta_table(rows, true))
                               : std::nullopt);
        } else if (analysis == "ranks" || analysis == "borda") {
            // per-task accuracy per model feeds the rankings
            auto task_key = make_group_key("task", idx);
            auto model_key = make_group_key("model", idx);
            std::map<std::string, std::map<std::string, double>> by_task;  // task -> model -> acc
            {
                auto both = make_group_key("task,model", idx);
                for (const auto& row : analytics::task_accuracy(verdicts, both)) {
                    size_t bar = row.group.find('|');
                    by_task[row.group.substr(0, bar)][row.group.substr(bar + 1)] =
                        row.accuracy;
                }
            }
            std::vector<std::map<std::string, double>> per_task_ranks;
            for (const auto& [task, accs] : by_task)
                per_task_ranks.push_back(analytics::rank_models(accs));
            if (analysis == "borda") {
                auto borda = analytics::borda_count(per_task_ranks);
                emit(g, "borda", report::borda_table(borda),
                     args.markdown ? std::optional(report::borda_table(borda)) : std::nullopt);
            } else {
                // truth ranking from labels, method ranking from verdicts
                std::map<std::string, std::map<std::string, std::pair<double, double>>> acc;
                for (const auto& inst : instances)
                    if (inst.label) {
                        auto& [sum, n] = acc[inst.task][inst.model_id];
                        sum += *inst.label;
                        n += 1;
                    }
                std::vector<std::map<std::string, double>> truth_ranks, method_ranks;
                for (const auto& [task, models] : acc) {
                    std::map<std::string, double> truth_acc;
                    for (const auto& [m, sn] : models) truth_acc[m] = sn.first / sn.second;
                    if (by_task.count(task) && by_task[task].size() == truth_acc.size()) {
                        truth_ranks.push_back(analytics::rank_models(truth_acc));
                        method_ranks.push_back(analytics::rank_models(by_task[task]));
                    }
                }
                auto deltas = analytics::rank_delta_avg(truth_ranks, method_ranks);
                std::map<std::string, double> avg_rank;
                for (const auto& ranks : method_ranks)
                    for (const auto& [m, r] : ranks) avg_rank[m] += r / method_ranks.size();
                emit(g, "ranks", report::rank_table(avg_rank, deltas),
                     args.markdown ? std::optional(report::rank_table(avg_rank, deltas))
                                   : std::nullopt);
            }
        } else if (analysis == "flops") {
            auto cost = analytics::flops_estimate(args.model_params, args.generated_tokens);
            report::Table t;
            t.header = {"model_params", "generated_tokens", "flops"};
            t.rows.push_back({report::format_full(cost.model_params),
                              report::format_full(cost.generated_tokens),
                              report::format_full(cost.flops)});
            emit(g, "flops", t, args.markdown ? std::optional(t) : std::nullopt);
        } else if (analysis == "agreement") {
            std::vector<std::pair<std::string, double>> per_category;
            if (!args.agreement_values.empty()) {
                std::string cur;
                for (char c : args.agreement_values + ",") {
                    if (c == ',') {
                        size_t eq = cur.find('=');
                        if (eq == std::string::npos)
                            throw std::invalid_argument(
                                "agreement values must be cat=rate,...");
                        per_category.emplace_back(cur.substr(0, eq),
                                                  std::stod(cur.substr(eq + 1)));
                        cur.clear();
                    } else cur += c;
                }
            } else {
                // dual-labeled file: synthetic in `label`, human in extra `human_label`
                std::map<std::string, std::vector<std::pair<int, int>>> pairs;
                for (const auto& inst : instances)
                    if (inst.label && inst.extra.contains("human_label"))
                        pairs[to_string(inst.category)].emplace_back(
                            *inst.label, inst.extra["human_label"].get<int>());
                for (const auto& [cat, p] : pairs)
                    per_category.emplace_back(cat,
                                              analytics::agreement_from_dual_labels(p).rho);
            }
            emit(g, "agreement", report::agreement_table(per_category),
                 std::optional(report::agreement_table(per_category)));
        } else {
            throw std::invalid_argument("unknown analysis: " + analysis);
        }
    }
    return kExitOk;
}

int cmd_sweep(const GlobalOpts& g, const std::string& scores_path,
              const std::string& instances_path, const std::string& grid_spec,
              bool emit_argmax) {
    auto instances = corpus::load_instances(instances_path);
    auto labels = labels_of(instances);

    std::vector<judge::EncoderScore> scores;
    {
        std::ifstream in(scores_path);
        if (!in) throw ValidationError("cannot open file: " + scores_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto j = json::parse(line);
            judge::EncoderScore s;
            s.instance_id = j.at("instance_id").get<std::string>();
            s.probability = j.at("probability").get<double>();
            if (s.probability < 0.0 || s.probability > 1.0)
                throw ValidationError("probability out of range in " + scores_path);
            scores.push_back(std::move(s));
        }
    }

    auto curve = analytics::threshold_sweep(scores, labels, parse_grid(grid_spec));
    emit(g, "threshold_sweep", report::sweep_table(curve), std::nullopt);
    if (emit_argmax && !curve.empty()) {
        auto best = curve.front();
        for (const auto& pt : curve)
            if (pt.second > best.second) best = pt;
        std::cout << "argmax theta=" << report::format_full(best.first)
                  << " accuracy=" << report::format_full(best.second) << "\n";
    }
    return kExitOk;
}

int cmd_correct(const GlobalOpts& g, double rho, double a_s, const std::string& table_path) {
    if (table_path.empty()) {
        auto c = analytics::correct_for_human(a_s, rho);
        std::cout << report::format_full(c.a_h) << "\n";
        return kExitOk;
    }
    // applies the correction to the accuracy column of an accuracy CSV
    std::ifstream in(table_path);
    if (!in) throw ValidationError("cannot open file: " + table_path);
    std::string header;
    std::getline(in, header);
    report::Table t;
    t.header = {"group", "a_s", "a_h"};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t c1 = line.find(',');
        size_t c2 = line.find(',', c1 + 1);
        std::string group = line.substr(0, c1);
        double as = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        auto c = analytics::correct_for_human(as, rho);
        t.rows.push_back({group, report::format_full(as), report::format_full(c.a_h)});
    }
    emit(g, "corrected_accuracy", t, std::nullopt);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch answer-correctness evaluation and analytics"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "flat key=value config file");
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_option("--seed", g.seed, "seed for any sampling");
    app.add_option("--replay", g.replay_log, "exchange log to replay instead of network");

    std::map<std::string, std::string> overrides;
    auto add_override_flags = [&overrides](CLI::App* cmd) {
        static const char* keys[] = {
            "pattern", "rouge_tau", "math_rel_tol", "encoder_theta", "prompt_mode",
            "endpoint_base_url", "endpoint_model", "endpoint_chat_path",
            "endpoint_score_path", "endpoint_auth_token_env", "in_flight_limit",
            "retries", "max_output_tokens", "parse_fail_policy", "hybrid_fallback",
            "encoder_include_question", "pattern_case_insensitive", "unit_tokens",
            "timeout_long_s", "timeout_short_s", "fail_fast"};
        for (const char* k : keys) {
            cmd->add_option_function<std::string>(
                "--" + std::string(k),
                [&overrides, k](const std::string& v) { overrides[k] = v; });
        }
    };

    auto* ev = app.add_subcommand("evaluate", "run one evaluation method over instances");
    std::string ev_instances, ev_method;
    ev->add_option("--instances", ev_instances, "instance file (one record per line)")
        ->required();
    ev->add_option("--method", ev_method, "regex | llm-judge | encoder-judge | hybrid")
        ->required();
    add_override_flags(ev);

    auto* lb = app.add_subcommand("label", "produce synthetic labels via an LLM judge");
    std::string lb_instances;
    lb->add_option("--instances", lb_instances)->required();
    add_override_flags(lb);

    auto* an = app.add_subcommand("analyze", "compute statistics over verdicts");
    AnalyzeArgs an_args;
    an->add_option("--verdicts", an_args.verdict_files, "verdict files");
    an->add_option("--instances", an_args.instances_path, "labeled instance file");
    an->add_option("--analyses", an_args.analyses,
                   "accuracy, task-accuracy, failure-rates, delta, ranks, borda, flops, agreement")
        ->required()
        ->delimiter(',');
    an->add_option("--group-by", an_args.group_by, "comma list of model,task,category");
    an->add_option("--model-params", an_args.model_params);
    an->add_option("--generated-tokens", an_args.generated_tokens);
    an->add_option("--agreement-values", an_args.agreement_values, "cat=rate,...");

    auto* rp = app.add_subcommand("report", "analyze plus human-readable Markdown tables");
    AnalyzeArgs rp_args;
    rp->add_option("--verdicts", rp_args.verdict_files);
    rp->add_option("--instances", rp_args.instances_path);
    rp->add_option("--analyses", rp_args.analyses)->required()->delimiter(',');
    rp->add_option("--group-by", rp_args.group_by);
    rp->add_option("--model-params", rp_args.model_params);
    rp->add_option("--generated-tokens", rp_args.generated_tokens);
    rp->add_option("--agreement-values", rp_args.agreement_values);

    auto* sw = app.add_subcommand("sweep-threshold", "accuracy-vs-theta curve");
    std::string sw_scores, sw_instances, sw_grid = "0:1:0.05";
    bool sw_argmax = false;
    sw->add_option("--scores", sw_scores, "encoder score file")->required();
    sw->add_option("--instances", sw_instances, "labeled instance file")->required();
    sw->add_option("--grid", sw_grid, "lo:hi:step or comma list");
    sw->add_flag("--emit-argmax", sw_argmax);

    auto* co = app.add_subcommand("correct", "human-agreement accuracy correction");
    double co_rho = 1.0, co_as = -1.0;
    std::string co_table;
    co->add_option("--rho", co_rho, "synthetic-human agreement rate")->required();
    co->add_option("--a-s", co_as, "accuracy against synthetic labels");
    co->add_option("--table", co_table, "accuracy CSV to correct row-wise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ev->parsed()) return cmd_evaluate(g, ev_instances, ev_method, overrides);
        if (lb->parsed()) return cmd_label(g, lb_instances, overrides);
        if (an->parsed()) return cmd_analyze(g, an_args);
        if (rp->parsed()) {
            rp_args.markdown = true;
            return cmd_analyze(g, rp_args);
        }
        if (sw->parsed()) return cmd_sweep(g, sw_scores, sw_instances, sw_grid, sw_argmax);
        if (co->parsed()) {
            if (co_table.empty() && (co_as < 0.0 || co_as > 1.0))
                throw std::invalid_argument("correct needs --a-s in [0,1] or --table");
            return cmd_correct(g, co_rho, co_as, co_table);
        }
    } catch (const judge::TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const ValidationError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const extract::PatternError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
