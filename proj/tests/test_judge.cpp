#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <thread>

#include <httplib.h>

#include "evalkit/judge.hpp"

using namespace evalkit;
using namespace evalkit::judge;

namespace {

EvalInstance make_instance(const std::string& id, const std::string& question = "Q?",
                           const std::string& reference = "42",
                           const std::string& candidate = "Final answer: 42") {
    EvalInstance inst;
    inst.id = id;
    inst.task = "math";
    inst.category = TaskCategory::kOpenFormMath;
    inst.question = question;
    inst.reference = reference;
    inst.candidate = candidate;
    inst.model_id = "m";
    return inst;
}

// In-process chat stub speaking the chat-completion wire convention.
struct StubServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    explicit StubServer(const std::function<std::string(const json&)>& chat_reply,
                        double score_reply = 0.5) {
        server.Post("/v1/chat/completions", [chat_reply](const httplib::Request& req,
                                                         httplib::Response& res) {
            json body = json::parse(req.body);
            json out;
            out["choices"] = json::array(
                {{{"message", {{"role", "assistant"}, {"content", chat_reply(body)}}}}});
            res.set_content(out.dump(), "application/json");
        });
        server.Post("/score", [score_reply](const httplib::Request& req,
                                            httplib::Response& res) {
            json body = json::parse(req.body);
            json out;
            out["probability"] = score_reply;
            out["echo_has_question"] = body.contains("question");
            res.set_content(out.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~StubServer() {
        server.stop();
        thread.join();
    }

    EndpointConfig config() const {
        EndpointConfig cfg;
        cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
        cfg.model = "stub-model";
        cfg.retries = 1;
        cfg.timeout_short_s = 5;
        cfg.timeout_long_s = 5;
        return cfg;
    }
};

}  // namespace

TEST_CASE("prompt contains the fixed template text") {
    auto inst = make_instance("p1");
    auto longp = build_assessment_prompt(inst, PromptMode::kLong);
    auto shortp = build_assessment_prompt(inst, PromptMode::kShort);
    for (const auto* p : {&longp, &shortp}) {
        CHECK(p->find("You are an expert evaluator.") != std::string::npos);
        CHECK(p->find("Base your judgment solely on the information given.") !=
              std::string::npos);
        CHECK(p->find("[QUESTION starts here]\nQ?\n[QUESTION ends here]") !=
              std::string::npos);
        CHECK(p->find("[REFERENCE starts here]\n42\n[REFERENCE ends here]") !=
              std::string::npos);
        CHECK(p->find("[CANDIDATE starts here]") != std::string::npos);
        CHECK(p->find("- \"Final answer: True\" if the CANDIDATE is correct") !=
              std::string::npos);
    }
    CHECK(longp.find("Conclude your response with exactly one of the following") !=
          std::string::npos);
    CHECK(shortp.find("add no additional text") != std::string::npos);
    CHECK(longp.find("add no additional text") == std::string::npos);
}

TEST_CASE("prompts differ between instances only inside the bracketed sections") {
    auto a = build_assessment_prompt(make_instance("a", "QA", "RA", "CA"),
                                     PromptMode::kLong);
    auto b = build_assessment_prompt(make_instance("b", "QB", "RB", "CB"),
                                     PromptMode::kLong);
    // strip the three slotted sections; the frames must be identical
    auto strip = [](std::string s) {
        for (const char* sec : {"QUESTION", "REFERENCE", "CANDIDATE"}) {
            std::string open = std::string("[") + sec + " starts here]\n";
            std::string close = std::string("\n[") + sec + " ends here]";
            size_t b1 = s.find(open);
            size_t e1 = s.find(close);
            s = s.substr(0, b1 + open.size()) + s.substr(e1);
        }
        return s;
    };
    CHECK(strip(a) == strip(b));
}

TEST_CASE("instance context is never injected into the prompt") {
    auto inst = make_instance("c1");
    inst.category = TaskCategory::kContextExtraction;
    inst.context = "SECRET-CONTEXT-TOKEN";
    auto p = build_assessment_prompt(inst, PromptMode::kLong);
    CHECK(p.find("SECRET-CONTEXT-TOKEN") == std::string::npos);
}

TEST_CASE("parse_judge_response") {
    CHECK(*parse_judge_response("reasoning...\nFinal answer: True") == 1);
    CHECK(*parse_judge_response("reasoning...\nFinal answer: False") == 0);
    CHECK(*parse_judge_response("Final answer: True.") == 1);
    CHECK(*parse_judge_response("True") == 1);
    CHECK(*parse_judge_response("False") == 0);
    CHECK(*parse_judge_response("  False.  ") == 0);
    CHECK_FALSE(parse_judge_response("I cannot decide.").has_value());
    CHECK_FALSE(parse_judge_response("Final answer: true").has_value());
    // last marker wins
    CHECK(*parse_judge_response("Final answer: False ... Final answer: True") == 1);
    CHECK(*parse_judge_response("Final answer: True ... Final answer: False") == 0);
}

TEST_CASE("round trip: built prompt reply parses for any surrounding text") {
    std::mt19937 rng(29);
    const char* noise[] = {"Let me think.\n", "The candidate says 42. ", "\n\n"};
    for (int trial = 0; trial < 30; ++trial) {
        std::string pre = noise[rng() % 3];
        std::string post = noise[rng() % 3];
        CHECK(*parse_judge_response(pre + "Final answer: True" + post) == 1);
        CHECK(*parse_judge_response(pre + "Final answer: False" + post) == 0);
    }
}

TEST_CASE("llm judge over stub endpoint") {
    StubServer stub([](const json& req) {
        // greedy decoding contract
        CHECK(req.at("temperature").get<double>() == 0.0);
        CHECK(req.at("model") == "stub-model");
        return "Final answer: True";
    });
    auto chat = make_http_chat(stub.config(), PromptMode::kShort);
    JudgeExchange ex;
    auto v = llm_judge_verdict(make_instance("i1"), chat, PromptMode::kShort, &ex);
    CHECK(v.verdict == 1);
    CHECK(v.method == Method::kLlmJudge);
    CHECK_FALSE(v.parse_failed);
    CHECK(ex.instance_id == "i1");
    CHECK(*ex.parsed == 1);
    CHECK(*v.latency_ms >= 0.0);
}

TEST_CASE("short-mode bare False reply") {
    StubServer stub([](const json&) { return "False"; });
    auto chat = make_http_chat(stub.config(), PromptMode::kShort);
    auto v = llm_judge_verdict(make_instance("i1"), chat, PromptMode::kShort);
    CHECK(v.verdict == 0);
}

TEST_CASE("garbage reply maps to verdict 0 with flag under default policy") {
    StubServer stub([](const json&) { return "?????"; });
    auto chat = make_http_chat(stub.config(), PromptMode::kShort);
    JudgeExchange ex;
    auto v = llm_judge_verdict(make_instance("i1"), chat, PromptMode::kShort, &ex);
    CHECK(v.verdict == 0);
    CHECK(v.parse_failed);
    CHECK(ex.parse_error);
    CHECK_FALSE(ex.parsed.has_value());
}

TEST_CASE("encoder score passthrough and question omission") {
    StubServer stub([](const json&) { return "x"; }, 0.93);
    auto score = make_http_score(stub.config());
    auto s = encoder_judge_score(make_instance("e1"), score, true);
    CHECK(s.probability == doctest::Approx(0.93));

    // w/o question the request body must carry no question field
    bool saw_question = true;
    auto probe = [&saw_question](const std::optional<std::string>& q, const std::string&,
                                 const std::string&) {
        saw_question = q.has_value();
        return 0.5;
    };
    encoder_judge_score(make_instance("e2"), probe, false);
    CHECK_FALSE(saw_question);
    encoder_judge_score(make_instance("e3"), probe, true);
    CHECK(saw_question);
}

TEST_CASE("out-of-range probability is a protocol error") {
    StubServer stub([](const json&) { return "x"; }, 1.7);
    auto score = make_http_score(stub.config());
    CHECK_THROWS_AS(encoder_judge_score(make_instance("e1"), score, true), ProtocolError);
}

TEST_CASE("encoder_verdict inclusive threshold and monotonicity") {
    EncoderScore s;
    s.instance_id = "x";
    s.probability = 0.7;
    CHECK(encoder_verdict(s, 0.5).verdict == 1);
    s.probability = 0.5;
    CHECK(encoder_verdict(s, 0.5).verdict == 1);
    s.probability = 0.49;
    CHECK(encoder_verdict(s, 0.5).verdict == 0);
    CHECK(*encoder_verdict(s, 0.5).score == doctest::Approx(0.49));

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double theta = unit(rng);
        double p1 = unit(rng), p2 = unit(rng);
        if (p1 > p2) std::swap(p1, p2);
        s.probability = p1;
        int v1 = encoder_verdict(s, theta).verdict;
        s.probability = p2;
        int v2 = encoder_verdict(s, theta).verdict;
        CHECK(v1 <= v2);  // raising probability never flips 1 -> 0
    }
}

TEST_CASE("hybrid equals regex when extraction succeeds") {
    match::MatchConfig cfg;
    auto never_called = [](const EvalInstance&) -> Verdict {
        FAIL("fallback must not run on parse success");
        return {};
    };
    auto inst = make_instance("h1");
    auto hybrid = hybrid_verdict(inst, cfg, never_called);
    auto regex = match::regex_method_verdict(inst, cfg);
    CHECK(hybrid.verdict == regex.verdict);
    CHECK(hybrid.method == Method::kHybrid);
    CHECK_FALSE(hybrid.parse_failed);
}

TEST_CASE("hybrid falls back on parse failure") {
    match::MatchConfig cfg;
    auto oracle = [](const EvalInstance&) {
        Verdict v;
        v.method = Method::kEncoderJudge;
        v.verdict = 1;
        return v;
    };
    auto inst = make_instance("h2", "Q?", "42", "correct answer, no marker");
    CHECK(match::regex_method_verdict(inst, cfg).verdict == 0);
    auto hybrid = hybrid_verdict(inst, cfg, oracle);
    CHECK(hybrid.verdict == 1);
    CHECK(hybrid.method == Method::kHybrid);
    CHECK_FALSE(hybrid.parse_failed);  // hybrid parse-failure rate is exactly 0
}

TEST_CASE("run_concurrent preserves input order under concurrency") {
    std::vector<EvalInstance> instances;
    for (int i = 0; i < 64; ++i) instances.push_back(make_instance("id" + std::to_string(i)));
    std::atomic<int> calls{0};
    auto out = run_concurrent(instances, 8, [&](const EvalInstance& inst, JudgeExchange*) {
        ++calls;
        Verdict v;
        v.instance_id = inst.id;
        v.method = Method::kLlmJudge;
        v.verdict = 1;
        return v;
    });
    CHECK(calls == 64);
    REQUIRE(out.size() == 64);
    for (int i = 0; i < 64; ++i) CHECK(out[i].instance_id == "id" + std::to_string(i));
}

TEST_CASE("transport errors surface after bounded retries") {
    EndpointConfig cfg;
    cfg.base_url = "http://127.0.0.1:9";  // discard port, nothing listens
    cfg.retries = 1;
    cfg.timeout_short_s = 1;
    auto chat = make_http_chat(cfg, PromptMode::kShort);
    CHECK_THROWS_AS(chat("prompt"), TransportError);
}

TEST_CASE("exchange log round-trips and replays without network") {
    StubServer stub([](const json&) { return "Final answer: True"; });
    auto chat = make_http_chat(stub.config(), PromptMode::kShort);
    std::vector<EvalInstance> instances = {make_instance("r1"), make_instance("r2")};
    std::vector<JudgeExchange> log;
    auto live = run_concurrent(
        instances, 2,
        [&](const EvalInstance& inst, JudgeExchange* ex) {
            return llm_judge_verdict(inst, chat, PromptMode::kShort, ex);
        },
        &log);
    REQUIRE(log.size() == 2);

    auto path = std::filesystem::temp_directory_path() / "evalkit_test_exchanges.jsonl";
    write_exchange_log(log, path);
    auto reloaded = load_exchange_log(path);
    REQUIRE(reloaded.size() == 2);

    auto replay = make_replay_chat(reloaded);
    auto replayed = run_concurrent(instances, 1, [&](const EvalInstance& inst,
                                                     JudgeExchange* ex) {
        return llm_judge_verdict(inst, replay, PromptMode::kShort, ex);
    });
    REQUIRE(replayed.size() == live.size());
    for (size_t i = 0; i < live.size(); ++i)
        CHECK(replayed[i].verdict == live[i].verdict);
    std::filesystem::remove(path);
}
