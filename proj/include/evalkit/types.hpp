/// @file types.hpp
/// @brief Core data model: instances, verdicts, run manifests.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace evalkit {

using json = nlohmann::ordered_json;

enum class TaskCategory {
    kMultipleChoice,
    kContextExtraction,
    kOpenFormMath,
};

std::string to_string(TaskCategory c);
TaskCategory task_category_from_string(const std::string& s);

enum class Method {
    kRegex,
    kLlmJudge,
    kEncoderJudge,
    kHybrid,
};

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// One question-candidate-reference record.
struct EvalInstance {
    std::string id;
    std::string task;
    TaskCategory category = TaskCategory::kMultipleChoice;
    std::string question;
    std::optional<std::string> context;        // context_extraction only
    std::optional<std::vector<std::string>> choices;  // multiple_choice only
    std::string reference;
    std::string candidate;  // full model output
    std::string model_id;
    std::optional<int> label;  // binary correctness
    std::optional<std::string> label_source;  // "synthetic" | "human"
    json extra = json::object();  // unknown input fields, echoed on output

    json to_json() const;
    static EvalInstance from_json(const json& j);
};

/// A method's binary correctness decision for one instance.
struct Verdict {
    std::string instance_id;
    Method method = Method::kRegex;
    int verdict = 0;
    bool parse_failed = false;
    std::optional<std::string> extracted;
    std::optional<double> score;      // encoder probability
    std::optional<std::string> judge_raw;
    std::optional<double> latency_ms;

    json to_json() const;
    static Verdict from_json(const json& j);

    /// Throws std::invalid_argument on type-invariant violations.
    void validate() const;
};

struct RunManifest {
    std::string run_id;
    std::string created_at;
    json method_config = json::object();
    std::string input_digest;

    json to_json() const;
    static RunManifest from_json(const json& j);
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace evalkit
