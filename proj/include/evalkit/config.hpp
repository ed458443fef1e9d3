/// @file config.hpp
/// @brief Engine configuration: flat key-value file plus flag overrides.

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "evalkit/judge.hpp"
#include "evalkit/match.hpp"

namespace evalkit::config {

struct EngineConfig {
    match::MatchConfig match;
    judge::EndpointConfig endpoint;
    judge::PromptMode prompt_mode = judge::PromptMode::kShort;
    double encoder_theta = 0.5;
    bool encoder_include_question = true;
    judge::ParseFailPolicy parse_fail_policy = judge::ParseFailPolicy::kScoreZero;
    bool fail_fast = false;
    std::string hybrid_fallback = "encoder-judge";  // or llm-judge

    /// Throws std::invalid_argument on out-of-range thresholds.
    void validate() const;

    json to_json() const;
};

/// Flat `key = value` lines; '#' comments; unknown keys rejected.
std::map<std::string, std::string> parse_flat_file(const std::filesystem::path& path);

/// Applies key-value pairs onto a config. Later calls win, so CLI flags
/// applied after the file override it.
void apply(EngineConfig& cfg, const std::map<std::string, std::string>& kv);

EngineConfig load(const std::filesystem::path& path);

}  // namespace evalkit::config
