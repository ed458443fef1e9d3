#include "evalkit/config.hpp"

#include <fstream>

namespace evalkit::config {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

void EngineConfig::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(match.rouge_tau))
        throw std::invalid_argument("rouge_tau must lie in [0,1]");
    if (!in_unit(encoder_theta))
        throw std::invalid_argument("encoder_theta must lie in [0,1]");
    if (match.math_rel_tol < 0)
        throw std::invalid_argument("math_rel_tol must be nonnegative");
    if (endpoint.in_flight_limit < 1)
        throw std::invalid_argument("in_flight_limit must be >= 1");
    if (endpoint.retries < 0)
        throw std::invalid_argument("retries must be nonnegative");
}

json EngineConfig::to_json() const {
    json j;
    j["pattern"] = match.pattern;
    j["pattern_case_insensitive"] = match.pattern_case_insensitive;
    j["rouge_tau"] = match.rouge_tau;
    j["math_rel_tol"] = match.math_rel_tol;
    j["unit_tokens"] = match.unit_tokens;
    j["encoder_theta"] = encoder_theta;
    j["encoder_include_question"] = encoder_include_question;
    j["prompt_mode"] = judge::to_string(prompt_mode);
    j["endpoint_base_url"] = endpoint.base_url;
    j["endpoint_model"] = endpoint.model;
    j["parse_fail_policy"] =
        parse_fail_policy == judge::ParseFailPolicy::kScoreZero ? "score-zero" : "abstain";
    j["hybrid_fallback"] = hybrid_fallback;
    return j;
}

std::map<std::string, std::string> parse_flat_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

void apply(EngineConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "pattern") cfg.match.pattern = value;
        else if (key == "pattern_case_insensitive")
            cfg.match.pattern_case_insensitive = (value == "true" || value == "1");
        else if (key == "rouge_tau") cfg.match.rouge_tau = std::stod(value);
        else if (key == "math_rel_tol") cfg.match.math_rel_tol = std::stod(value);
        else if (key == "unit_tokens") {
            cfg.match.unit_tokens.clear();
            std::string cur;
            for (char c : value + ",") {
                if (c == ',') {
                    std::string t = trim(cur);
                    if (!t.empty()) cfg.match.unit_tokens.push_back(t);
                    cur.clear();
                } else cur += c;
            }
        }
        else if (key == "encoder_theta") cfg.encoder_theta = std::stod(value);
        else if (key == "encoder_include_question")
            cfg.encoder_include_question = (value == "true" || value == "1");
        else if (key == "prompt_mode") cfg.prompt_mode = judge::prompt_mode_from_string(value);
        else if (key == "endpoint_base_url") cfg.endpoint.base_url = value;
        else if (key == "endpoint_chat_path") cfg.endpoint.chat_path = value;
        else if (key == "endpoint_score_path") cfg.endpoint.score_path = value;
        else if (key == "endpoint_model") cfg.endpoint.model = value;
        else if (key == "endpoint_auth_token_env") cfg.endpoint.auth_token_env = value;
        else if (key == "max_output_tokens") cfg.endpoint.max_output_tokens = std::stoi(value);
        else if (key == "retries") cfg.endpoint.retries = std::stoi(value);
        else if (key == "timeout_long_s") cfg.endpoint.timeout_long_s = std::stoi(value);
        else if (key == "timeout_short_s") cfg.endpoint.timeout_short_s = std::stoi(value);
        else if (key == "in_flight_limit") cfg.endpoint.in_flight_limit = std::stoi(value);
        else if (key == "parse_fail_policy")
            cfg.parse_fail_policy = value == "abstain" ? judge::ParseFailPolicy::kAbstain
                                                       : judge::ParseFailPolicy::kScoreZero;
        else if (key == "fail_fast") cfg.fail_fast = (value == "true" || value == "1");
        else if (key == "hybrid_fallback") cfg.hybrid_fallback = value;
        else
            throw ValidationError("unknown config key: '" + key + "'");
    }
}

EngineConfig load(const std::filesystem::path& path) {
    EngineConfig cfg;
    config::apply(cfg, parse_flat_file(path));
    cfg.validate();
    return cfg;
}

}  // namespace evalkit::config
