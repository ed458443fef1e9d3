#include "evalkit/judge.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <httplib.h>

namespace evalkit::judge {

namespace {

constexpr const char* kPromptHeader =
    "You are an expert evaluator. Your task is to determine whether the CANDIDATE response\n"
    "correctly answers the QUESTION.\n"
    "Judge the CANDIDATE as correct only if its final answer, disregarding any intermediate\n"
    "reasoning or explanation, is semantically equivalent to the\n"
    "REFERENCE with respect to the QUESTION.\n"
    "Base your judgment solely on the information given. Do not rely on external knowledge.\n";

constexpr const char* kClosingLong =
    "Conclude your response with exactly one of the following:\n";
constexpr const char* kClosingShort =
    "Respond with exactly one of the following strings (add no additional text):\n";
constexpr const char* kClosingOptions =
    "- \"Final answer: True\" if the CANDIDATE is correct\n"
    "- \"Final answer: False\" if the CANDIDATE is incorrect\n";

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(PromptMode m) {
    return m == PromptMode::kShort ? "short" : "long";
}

PromptMode prompt_mode_from_string(const std::string& s) {
    if (s == "short") return PromptMode::kShort;
    if (s == "long") return PromptMode::kLong;
    throw ValidationError("unknown prompt mode: '" + s + "'");
}

std::string build_assessment_prompt(const EvalInstance& instance, PromptMode mode) {
    std::ostringstream out;
    out << kPromptHeader << "\n"
        << "[QUESTION starts here]\n"
        << instance.question << "\n"
        << "[QUESTION ends here]\n\n"
        << "[REFERENCE starts here]\n"
        << instance.reference << "\n"
        << "[REFERENCE ends here]\n\n"
        << "[CANDIDATE starts here]\n"
        << instance.candidate << "\n"
        << "[CANDIDATE ends here]\n\n"
        << (mode == PromptMode::kLong ? kClosingLong : kClosingShort)
        << kClosingOptions;
    return out.str();
}

std::optional<int> parse_judge_response(const std::string& raw) {
    static const std::string kTrue = "Final answer: True";
    static const std::string kFalse = "Final answer: False";
    size_t t = raw.rfind(kTrue);
    size_t f = raw.rfind(kFalse);
    if (t != std::string::npos || f != std::string::npos) {
        if (f == std::string::npos) return 1;
        if (t == std::string::npos) return 0;
        return t > f ? 1 : 0;
    }
    std::string bare = trim(raw);
    while (!bare.empty() && (bare.back() == '.' || bare.back() == '!'))
        bare.pop_back();
    if (bare == "True") return 1;
    if (bare == "False") return 0;
    return std::nullopt;
}

namespace {

// Splits "http://host:port" into client target and verifies the scheme.
std::unique_ptr<httplib::Client> make_client(const EndpointConfig& cfg, int timeout_s) {
    auto client = std::make_unique<httplib::Client>(cfg.base_url);
    client->set_connection_timeout(timeout_s, 0);
    client->set_read_timeout(timeout_s, 0);
    if (!cfg.auth_token_env.empty()) {
        if (const char* token = std::getenv(cfg.auth_token_env.c_str()))
            client->set_bearer_token_auth(token);
    }
    return client;
}

template <typename Fn>
auto with_retries(int retries, Fn&& fn) {
    int attempt = 0;
    for (;;) {
        try {
            return fn();
        } catch (const TransportError&) {
            if (attempt >= retries) throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(50 << attempt));
            ++attempt;
        }
    }
}

}  // namespace

ChatFn make_http_chat(const EndpointConfig& cfg, PromptMode mode) {
    int timeout = mode == PromptMode::kLong ? cfg.timeout_long_s : cfg.timeout_short_s;
    return [cfg, timeout](const std::string& prompt) -> std::string {
        return with_retries(cfg.retries, [&]() -> std::string {
            auto client = make_client(cfg, timeout);
            json body;
            body["model"] = cfg.model;
            body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
            body["temperature"] = 0;
            body["max_tokens"] = cfg.max_output_tokens;
            auto res = client->Post(cfg.chat_path, body.dump(), "application/json");
            if (!res)
                throw TransportError("chat endpoint unreachable: " + cfg.base_url);
            if (res->status != 200)
                throw TransportError("chat endpoint HTTP " + std::to_string(res->status));
            try {
                json reply = json::parse(res->body);
                return reply.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
            } catch (const json::exception& e) {
                throw ProtocolError(std::string("malformed chat response: ") + e.what());
            }
        });
    };
}

ScoreFn make_http_score(const EndpointConfig& cfg) {
    return [cfg](const std::optional<std::string>& question, const std::string& candidate,
                 const std::string& reference) -> double {
        return with_retries(cfg.retries, [&]() -> double {
            auto client = make_client(cfg, cfg.timeout_short_s);
            json body;
            if (question) body["question"] = *question;
            body["candidate"] = candidate;
            body["reference"] = reference;
            auto res = client->Post(cfg.score_path, body.dump(), "application/json");
            if (!res)
                throw TransportError("score endpoint unreachable: " + cfg.base_url);
            if (res->status != 200)
                throw TransportError("score endpoint HTTP " + std::to_string(res->status));
            double p;
            try {
                p = json::parse(res->body).at("probability").get<double>();
            } catch (const json::exception& e) {
                throw ProtocolError(std::string("malformed score response: ") + e.what());
            }
            if (p < 0.0 || p > 1.0)
                throw ProtocolError("probability out of range: " + std::to_string(p));
            return p;
        });
    };
}

ChatFn make_replay_chat(const std::vector<JudgeExchange>& log) {
    // keyed by prompt so a replay is independent of instance ordering
    auto by_prompt = std::make_shared<std::unordered_map<std::string, std::string>>();
    for (const auto& ex : log) (*by_prompt)[ex.prompt] = ex.raw_response;
    return [by_prompt](const std::string& prompt) -> std::string {
        auto it = by_prompt->find(prompt);
        if (it == by_prompt->end())
            throw TransportError("replay log has no entry for this prompt");
        return it->second;
    };
}

Verdict llm_judge_verdict(const EvalInstance& instance, const ChatFn& chat,
                          PromptMode mode, JudgeExchange* exchange,
                          ParseFailPolicy policy) {
    std::string prompt = build_assessment_prompt(instance, mode);
    auto start = std::chrono::steady_clock::now();
    std::string raw = chat(prompt);
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    auto parsed = parse_judge_response(raw);

    if (exchange) {
        exchange->instance_id = instance.id;
        exchange->prompt = prompt;
        exchange->raw_response = raw;
        exchange->parsed = parsed;
        exchange->parse_error = !parsed.has_value();
    }

    Verdict v;
    v.instance_id = instance.id;
    v.method = Method::kLlmJudge;
    v.judge_raw = raw;
    v.latency_ms = elapsed;
    if (parsed) {
        v.verdict = *parsed;
    } else {
        if (policy == ParseFailPolicy::kAbstain)
            throw ProtocolError("judge reply unparsable for instance " + instance.id);
        v.verdict = 0;
        v.parse_failed = true;
    }
    return v;
}

EncoderScore encoder_judge_score(const EvalInstance& instance, const ScoreFn& score,
                                 bool include_question) {
    EncoderScore s;
    s.instance_id = instance.id;
    s.include_question = include_question;
    std::optional<std::string> q;
    if (include_question) q = instance.question;
    s.probability = score(q, instance.candidate, instance.reference);
    if (s.probability < 0.0 || s.probability > 1.0)
        throw ProtocolError("probability out of range");
    return s;
}

Verdict encoder_verdict(const EncoderScore& score, double theta) {
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("theta must lie in [0,1]");
    Verdict v;
    v.instance_id = score.instance_id;
    v.method = Method::kEncoderJudge;
    v.score = score.probability;
    v.verdict = score.probability >= theta ? 1 : 0;
    return v;
}

Verdict hybrid_verdict(const EvalInstance& instance, const match::MatchConfig& cfg,
                       const FallbackFn& fallback) {
    Verdict regex = match::regex_method_verdict(instance, cfg);
    if (!regex.parse_failed) {
        regex.method = Method::kHybrid;
        return regex;
    }
    Verdict v = fallback(instance);
    v.instance_id = instance.id;
    v.method = Method::kHybrid;
    v.parse_failed = false;
    return v;
}

std::vector<Verdict> run_concurrent(
    const std::vector<EvalInstance>& instances, int in_flight,
    const std::function<Verdict(const EvalInstance&, JudgeExchange*)>& work,
    std::vector<JudgeExchange>* exchanges) {
    if (in_flight < 1) throw std::invalid_argument("in_flight limit must be >= 1");
    std::vector<Verdict> out(instances.size());
    std::vector<std::string> errors;
    std::mutex mu;
    size_t next = 0;

    auto worker = [&] {
        for (;;) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= instances.size()) return;
                i = next++;
            }
            JudgeExchange ex;
            try {
                Verdict v = work(instances[i], &ex);
                std::lock_guard<std::mutex> lock(mu);
                out[i] = std::move(v);
                if (exchanges && !ex.instance_id.empty())
                    exchanges->push_back(std::move(ex));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                errors.push_back(instances[i].id + ": " + e.what());
            }
        }
    };

    size_t n_threads = std::min<size_t>(static_cast<size_t>(in_flight), instances.size());
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (!errors.empty()) {
        std::string msg = std::to_string(errors.size()) + " instance(s) errored: ";
        msg += errors.front();
        throw TransportError(msg);
    }
    return out;
}

json JudgeExchange::to_json() const {
    json j;
    j["instance_id"] = instance_id;
    j["prompt"] = prompt;
    j["raw_response"] = raw_response;
    if (parsed) j["parsed"] = *parsed;
    j["parse_error"] = parse_error;
    return j;
}

JudgeExchange JudgeExchange::from_json(const json& j) {
    JudgeExchange ex;
    ex.instance_id = j.at("instance_id").get<std::string>();
    ex.prompt = j.value("prompt", std::string{});
    ex.raw_response = j.value("raw_response", std::string{});
    if (j.contains("parsed") && !j["parsed"].is_null()) ex.parsed = j["parsed"].get<int>();
    ex.parse_error = j.value("parse_error", false);
    if (ex.parsed.has_value() == ex.parse_error)
        throw ValidationError("exchange must have parsed xor parse_error");
    return ex;
}

void write_exchange_log(const std::vector<JudgeExchange>& log,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    for (const auto& ex : log) out << ex.to_json().dump() << '\n';
}

std::vector<JudgeExchange> load_exchange_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::vector<JudgeExchange> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(JudgeExchange::from_json(json::parse(line)));
    }
    return out;
}

}  // namespace evalkit::judge
