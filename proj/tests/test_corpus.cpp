#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evalkit/corpus.hpp"

using namespace evalkit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("evalkit_test_" + name);
}

const char* kThreeLines = R"json({"id":"q1","task":"mmlu","category":"multiple_choice","question":"Q1","choices":["yes","no"],"reference":"A","candidate":"Final answer: A","model_id":"m1"}
{"id":"q2","task":"coqa","category":"context_extraction","question":"Q2","context":"ctx","reference":"a span","candidate":"Final answer: a span","model_id":"m1"}
{"id":"q3","task":"math","category":"open_form_math","question":"Q3","reference":"45","candidate":"Final answer: \\( \\boxed{45} \\)","model_id":"m1"}
)json";

}  // namespace

TEST_CASE("well-formed file loads in order") {
    auto instances = corpus::parse_instances(kThreeLines);
    REQUIRE(instances.size() == 3);
    CHECK(instances[0].id == "q1");
    CHECK(instances[1].id == "q2");
    CHECK(instances[2].id == "q3");
    CHECK(instances[2].category == TaskCategory::kOpenFormMath);
    CHECK(instances[2].reference == "45");
}

TEST_CASE("context_extraction without context names the line") {
    std::string bad =
        R"({"id":"q1","category":"context_extraction","question":"Q","reference":"r","candidate":"c"})";
    try {
        corpus::parse_instances(bad, "input.jsonl");
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("input.jsonl:1") != std::string::npos);
        CHECK(msg.find("context") != std::string::npos);
    }
}

TEST_CASE("duplicate id rejected with line number") {
    std::string dup =
        R"({"id":"q1","category":"open_form_math","question":"Q","reference":"1","candidate":"c"})"
        "\n"
        R"({"id":"q1","category":"open_form_math","question":"Q","reference":"1","candidate":"c"})";
    CHECK_THROWS_WITH_AS(corpus::parse_instances(dup, "f"),
                         doctest::Contains("f:2"), ValidationError);
}

TEST_CASE("multiple_choice invariants") {
    std::string one_choice =
        R"({"id":"q1","category":"multiple_choice","question":"Q","choices":["only"],"reference":"A","candidate":"c"})";
    CHECK_THROWS_AS(corpus::parse_instances(one_choice), ValidationError);

    std::string bad_letter =
        R"({"id":"q1","category":"multiple_choice","question":"Q","choices":["a","b"],"reference":"Z","candidate":"c"})";
    CHECK_THROWS_AS(corpus::parse_instances(bad_letter), ValidationError);
}

TEST_CASE("option-text reference normalized to letter") {
    std::string text_ref =
        R"({"id":"q1","category":"multiple_choice","question":"Q","choices":["London","Paris"],"reference":"Paris","candidate":"c"})";
    auto instances = corpus::parse_instances(text_ref);
    CHECK(instances[0].reference == "B");
}

TEST_CASE("unknown category rejected") {
    std::string bad =
        R"({"id":"q1","category":"essay","question":"Q","reference":"r","candidate":"c"})";
    CHECK_THROWS_AS(corpus::parse_instances(bad), ValidationError);
}

TEST_CASE("bad label rejected") {
    std::string bad =
        R"({"id":"q1","category":"open_form_math","question":"Q","reference":"1","candidate":"c","label":2})";
    CHECK_THROWS_AS(corpus::parse_instances(bad), ValidationError);
}

TEST_CASE("unknown extra fields are preserved and echoed") {
    std::string with_extra =
        R"({"id":"q1","category":"open_form_math","question":"Q","reference":"1","candidate":"c","source_split":"test","difficulty":3})";
    auto instances = corpus::parse_instances(with_extra);
    REQUIRE(instances.size() == 1);
    auto j = instances[0].to_json();
    CHECK(j["source_split"] == "test");
    CHECK(j["difficulty"] == 3);
}

TEST_CASE("persist and reload verdicts round-trips byte-identically") {
    std::vector<Verdict> verdicts;
    Verdict v1;
    v1.instance_id = "q1";
    v1.method = Method::kRegex;
    v1.verdict = 1;
    v1.extracted = "A";
    Verdict v2;
    v2.instance_id = "q2";
    v2.method = Method::kRegex;
    v2.verdict = 0;
    v2.parse_failed = true;
    verdicts = {v1, v2};

    RunManifest manifest;
    manifest.run_id = "r1";
    manifest.created_at = "2026-01-01T00:00:00Z";
    manifest.input_digest = "abc";

    auto path = temp_file("verdicts.jsonl");
    corpus::persist_verdicts(verdicts, manifest, path, {"q1", "q2"});
    std::string first = slurp(path);
    CHECK(std::count(first.begin(), first.end(), '\n') == 2);

    auto reloaded = corpus::load_verdicts(path);
    REQUIRE(reloaded.size() == 2);
    corpus::persist_verdicts(reloaded, manifest, path, {"q1", "q2"});
    CHECK(slurp(path) == first);  // persist . load . persist is byte-idempotent

    auto m = corpus::load_manifest(path.string() + ".manifest");
    CHECK(m.run_id == "r1");
    fs::remove(path);
    fs::remove(path.string() + ".manifest");
}

TEST_CASE("empty verdict list yields empty file plus manifest") {
    auto path = temp_file("empty.jsonl");
    RunManifest manifest;
    manifest.run_id = "r";
    manifest.created_at = "t";
    manifest.input_digest = "d";
    corpus::persist_verdicts({}, manifest, path, {});
    CHECK(slurp(path).empty());
    CHECK(fs::exists(path.string() + ".manifest"));
    fs::remove(path);
    fs::remove(path.string() + ".manifest");
}

TEST_CASE("verdict with unknown id rejected") {
    Verdict v;
    v.instance_id = "ghost";
    v.method = Method::kRegex;
    RunManifest manifest;
    CHECK_THROWS_AS(
        corpus::persist_verdicts({v}, manifest, temp_file("x.jsonl"), {"q1"}),
        ValidationError);
}

TEST_CASE("invalid verdicts rejected before persistence") {
    Verdict v;
    v.instance_id = "q1";
    v.method = Method::kRegex;
    v.parse_failed = true;
    v.verdict = 1;  // violates the parse-failure invariant
    RunManifest manifest;
    CHECK_THROWS(corpus::persist_verdicts({v}, manifest, temp_file("y.jsonl"), {"q1"}));

    Verdict w;
    w.instance_id = "q1";
    w.method = Method::kEncoderJudge;
    w.score = 1.7;
    CHECK_THROWS(corpus::persist_verdicts({w}, manifest, temp_file("y.jsonl"), {"q1"}));
}

TEST_CASE("content digest is stable and content-sensitive") {
    CHECK(corpus::content_digest_of("abc") == corpus::content_digest_of("abc"));
    CHECK(corpus::content_digest_of("abc") != corpus::content_digest_of("abd"));
}
