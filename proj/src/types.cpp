#include "evalkit/types.hpp"

namespace evalkit {

std::string to_string(TaskCategory c) {
    switch (c) {
        case TaskCategory::kMultipleChoice: return "multiple_choice";
        case TaskCategory::kContextExtraction: return "context_extraction";
        case TaskCategory::kOpenFormMath: return "open_form_math";
    }
    throw std::logic_error("bad TaskCategory");
}

TaskCategory task_category_from_string(const std::string& s) {
    if (s == "multiple_choice") return TaskCategory::kMultipleChoice;
    if (s == "context_extraction") return TaskCategory::kContextExtraction;
    if (s == "open_form_math") return TaskCategory::kOpenFormMath;
    throw ValidationError("unknown category: '" + s + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::kRegex: return "regex";
        case Method::kLlmJudge: return "llm_judge";
        case Method::kEncoderJudge: return "encoder_judge";
        case Method::kHybrid: return "hybrid";
    }
    throw std::logic_error("bad Method");
}

Method method_from_string(const std::string& s) {
    if (s == "regex") return Method::kRegex;
    if (s == "llm_judge" || s == "llm-judge") return Method::kLlmJudge;
    if (s == "encoder_judge" || s == "encoder-judge") return Method::kEncoderJudge;
    if (s == "hybrid") return Method::kHybrid;
    throw ValidationError("unknown method: '" + s + "'");
}

namespace {

const char* const kKnownInstanceKeys[] = {
    "id", "task", "category", "question", "context", "choices",
    "reference", "candidate", "model_id", "label", "label_source",
};

bool known_instance_key(const std::string& k) {
    for (const char* known : kKnownInstanceKeys)
        if (k == known) return true;
    return false;
}

}  // namespace

json EvalInstance::to_json() const {
    json j;
    j["id"] = id;
    j["task"] = task;
    j["category"] = evalkit::to_string(category);
    j["question"] = question;
    if (context) j["context"] = *context;
    if (choices) j["choices"] = *choices;
    j["reference"] = reference;
    j["candidate"] = candidate;
    j["model_id"] = model_id;
    if (label) j["label"] = *label;
    if (label_source) j["label_source"] = *label_source;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

EvalInstance EvalInstance::from_json(const json& j) {
    EvalInstance inst;
    if (!j.contains("id") || !j["id"].is_string())
        throw ValidationError("missing or non-string field 'id'");
    inst.id = j["id"].get<std::string>();
    inst.task = j.value("task", std::string{});
    if (!j.contains("category"))
        throw ValidationError("missing field 'category'");
    inst.category = task_category_from_string(j["category"].get<std::string>());
    inst.question = j.value("question", std::string{});
    if (j.contains("context") && !j["context"].is_null())
        inst.context = j["context"].get<std::string>();
    if (j.contains("choices") && !j["choices"].is_null())
        inst.choices = j["choices"].get<std::vector<std::string>>();
    if (!j.contains("reference"))
        throw ValidationError("missing field 'reference'");
    inst.reference = j["reference"].get<std::string>();
    if (!j.contains("candidate"))
        throw ValidationError("missing field 'candidate'");
    inst.candidate = j["candidate"].get<std::string>();
    inst.model_id = j.value("model_id", std::string{});
    if (j.contains("label") && !j["label"].is_null()) {
        int v = j["label"].get<int>();
        if (v != 0 && v != 1)
            throw ValidationError("field 'label' must be 0 or 1");
        inst.label = v;
    }
    if (j.contains("label_source") && !j["label_source"].is_null()) {
        std::string src = j["label_source"].get<std::string>();
        if (src != "synthetic" && src != "human")
            throw ValidationError("field 'label_source' must be synthetic or human");
        inst.label_source = src;
    }
    for (const auto& [k, v] : j.items())
        if (!known_instance_key(k)) inst.extra[k] = v;

    if (inst.category == TaskCategory::kMultipleChoice) {
        if (!inst.choices || inst.choices->size() < 2)
            throw ValidationError("multiple_choice requires 'choices' with >= 2 entries");
    }
    if (inst.category == TaskCategory::kContextExtraction && !inst.context)
        throw ValidationError("context_extraction requires 'context'");
    return inst;
}

json Verdict::to_json() const {
    json j;
    j["instance_id"] = instance_id;
    j["method"] = evalkit::to_string(method);
    j["verdict"] = verdict;
    j["parse_failed"] = parse_failed;
    if (extracted) j["extracted"] = *extracted;
    if (score) j["score"] = *score;
    if (judge_raw) j["judge_raw"] = *judge_raw;
    if (latency_ms) j["latency_ms"] = *latency_ms;
    return j;
}

Verdict Verdict::from_json(const json& j) {
    Verdict v;
    v.instance_id = j.at("instance_id").get<std::string>();
    v.method = method_from_string(j.at("method").get<std::string>());
    v.verdict = j.at("verdict").get<int>();
    v.parse_failed = j.value("parse_failed", false);
    if (j.contains("extracted") && !j["extracted"].is_null())
        v.extracted = j["extracted"].get<std::string>();
    if (j.contains("score") && !j["score"].is_null())
        v.score = j["score"].get<double>();
    if (j.contains("judge_raw") && !j["judge_raw"].is_null())
        v.judge_raw = j["judge_raw"].get<std::string>();
    if (j.contains("latency_ms") && !j["latency_ms"].is_null())
        v.latency_ms = j["latency_ms"].get<double>();
    v.validate();
    return v;
}

void Verdict::validate() const {
    if (verdict != 0 && verdict != 1)
        throw std::invalid_argument("verdict must be 0 or 1");
    if (method == Method::kRegex && parse_failed) {
        if (verdict != 0)
            throw std::invalid_argument("regex parse failure requires verdict 0");
        if (extracted)
            throw std::invalid_argument("regex parse failure forbids 'extracted'");
    }
    if (score && (*score < 0.0 || *score > 1.0))
        throw std::invalid_argument("score must lie in [0,1]");
    if (latency_ms && *latency_ms < 0.0)
        throw std::invalid_argument("latency_ms must be nonnegative");
}

json RunManifest::to_json() const {
    json j;
    j["run_id"] = run_id;
    j["created_at"] = created_at;
    j["method_config"] = method_config;
    j["input_digest"] = input_digest;
    return j;
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    m.method_config = j.value("method_config", json::object());
    m.input_digest = j.at("input_digest").get<std::string>();
    return m;
}

}  // namespace evalkit
