/// @file judge.hpp
/// @brief LLM-as-a-judge and encoder-judge clients, response parsing, and
/// the regex-with-judge-fallback hybrid strategy.

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evalkit/match.hpp"
#include "evalkit/types.hpp"

namespace evalkit::judge {

enum class PromptMode { kShort, kLong };

std::string to_string(PromptMode m);
PromptMode prompt_mode_from_string(const std::string& s);

struct JudgeExchange {
    std::string instance_id;
    std::string prompt;
    std::string raw_response;
    std::optional<int> parsed;  // present xor parse_error
    bool parse_error = false;

    json to_json() const;
    static JudgeExchange from_json(const json& j);
};

struct EncoderScore {
    std::string instance_id;
    double probability = 0.0;  // in [0,1]
    bool include_question = true;
};

struct EndpointConfig {
    std::string base_url;            // e.g. http://127.0.0.1:8080
    std::string chat_path = "/v1/chat/completions";
    std::string score_path = "/score";
    std::string model;
    std::string auth_token_env;      // env var holding the bearer token
    int max_output_tokens = 2048;
    int retries = 3;
    int timeout_long_s = 120;
    int timeout_short_s = 30;
    int in_flight_limit = 4;
};

/// What to do when a judge reply cannot be parsed.
enum class ParseFailPolicy { kScoreZero, kAbstain };

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Builds the assessment prompt; the two modes differ only in the
/// closing instruction.
std::string build_assessment_prompt(const EvalInstance& instance, PromptMode mode);

/// Last "Final answer: True/False" marker wins; a bare "True"/"False"
/// whole-response reply is accepted too. nullopt means parse error.
std::optional<int> parse_judge_response(const std::string& raw);

/// Transport abstraction: returns the assistant message text for a prompt.
/// HTTP and replay implementations below; tests may stub it directly.
using ChatFn = std::function<std::string(const std::string& prompt)>;
using ScoreFn = std::function<double(const std::optional<std::string>& question,
                                     const std::string& candidate,
                                     const std::string& reference)>;

/// Chat-completion client with bounded retries and exponential backoff.
/// Sends temperature 0 and the configured model/max tokens.
ChatFn make_http_chat(const EndpointConfig& cfg, PromptMode mode);

/// Score-endpoint client posting {question?, candidate, reference} and
/// expecting {probability}. Out-of-range probability raises ProtocolError.
ScoreFn make_http_score(const EndpointConfig& cfg);

/// Replay transport: answers from a saved exchange log, no network.
ChatFn make_replay_chat(const std::vector<JudgeExchange>& log);

Verdict llm_judge_verdict(const EvalInstance& instance, const ChatFn& chat,
                          PromptMode mode, JudgeExchange* exchange = nullptr,
                          ParseFailPolicy policy = ParseFailPolicy::kScoreZero);

EncoderScore encoder_judge_score(const EvalInstance& instance, const ScoreFn& score,
                                 bool include_question);

Verdict encoder_verdict(const EncoderScore& score, double theta);

/// Regex verdict when extraction succeeds; fallback judge on parse failure.
/// The returned method is always hybrid and parse_failed is always false
/// unless the fallback itself could not be used.
using FallbackFn = std::function<Verdict(const EvalInstance&)>;
Verdict hybrid_verdict(const EvalInstance& instance, const match::MatchConfig& cfg,
                       const FallbackFn& fallback);

/// Runs `work` over all instances with at most `in_flight` concurrent
/// calls; results come back in input order. Exchanges, when collected,
/// are appended in completion order.
std::vector<Verdict> run_concurrent(
    const std::vector<EvalInstance>& instances, int in_flight,
    const std::function<Verdict(const EvalInstance&, JudgeExchange*)>& work,
    std::vector<JudgeExchange>* exchanges = nullptr);

void write_exchange_log(const std::vector<JudgeExchange>& log,
                        const std::filesystem::path& path);
std::vector<JudgeExchange> load_exchange_log(const std::filesystem::path& path);

}  // namespace evalkit::judge
