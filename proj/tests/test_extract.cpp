#include <doctest.h>

#include <algorithm>
#include <random>

#include "evalkit/extract.hpp"

using namespace evalkit;
using extract::extract_final_answer;

namespace {

// Table-10-style output: correct answer, no final-answer marker.
const char* kNoMarkerCandidate =
    "The ISA, or Identity Structure Analysis, is a methodology developed by\n"
    "Weinreich that maps how individuals perceive themselves and others in\n"
    "relation to their social environment, including their own group memberships\n"
    "and identifications, as well as the cultural norms and discourses that\n"
    "shape these perceptions.";

}  // namespace

TEST_CASE("single direct match") {
    auto e = extract_final_answer("The capital is Paris.\nFinal answer: B");
    REQUIRE(e.success);
    CHECK(*e.span == "B");
}

TEST_CASE("no marker fails") {
    auto e = extract_final_answer(kNoMarkerCandidate);
    CHECK_FALSE(e.success);
    CHECK_FALSE(e.span.has_value());
}

TEST_CASE("latex boxed span survives trimming") {
    auto e = extract_final_answer("...\nFinal answer: \\( \\boxed{45} \\)");
    REQUIRE(e.success);
    CHECK(*e.span == "\\( \\boxed{45} \\)");
}

TEST_CASE("last match wins") {
    auto e = extract_final_answer("Final answer: A ... later ... Final answer: C");
    REQUIRE(e.success);
    CHECK(*e.span == "C");
}

TEST_CASE("capture does not cross line boundaries") {
    auto e = extract_final_answer("Final answer: B\ntrailing boilerplate");
    REQUIRE(e.success);
    CHECK(*e.span == "B");
}

TEST_CASE("trailing sentence period trimmed, interior dots kept") {
    CHECK(*extract_final_answer("Final answer: Paris.").span == "Paris");
    CHECK(*extract_final_answer("Final answer: 2.5").span == "2.5");
}

TEST_CASE("case sensitivity is configurable") {
    CHECK_FALSE(extract_final_answer("final answer: B").success);
    auto e = extract_final_answer("final answer: B", extract::kDefaultPattern, true);
    REQUIRE(e.success);
    CHECK(*e.span == "B");
}

TEST_CASE("invalid pattern is a configuration error") {
    CHECK_THROWS_AS(extract_final_answer("x", "(unclosed"), extract::PatternError);
    CHECK_THROWS_AS(extract_final_answer("x", "no capture group"),
                    extract::PatternError);
}

TEST_CASE("appending non-matching text never changes a successful span") {
    std::mt19937 rng(7);
    const char* suffixes[] = {"\nmore words", "\ntrailing", "\n\nnothing here"};
    for (int trial = 0; trial < 50; ++trial) {
        std::string body = "intro\nFinal answer: X" + std::to_string(trial);
        auto before = extract_final_answer(body);
        auto after = extract_final_answer(body + suffixes[rng() % 3]);
        REQUIRE(before.success);
        REQUIRE(after.success);
        CHECK(*before.span == *after.span);
    }
}

TEST_CASE("failure_rate counts per group") {
    auto mk = [](const std::string& id, bool failed) {
        Verdict v;
        v.instance_id = id;
        v.method = Method::kRegex;
        v.parse_failed = failed;
        return v;
    };
    std::vector<Verdict> verdicts = {mk("a1", true), mk("a2", true), mk("a3", true),
                                     mk("a4", false), mk("a5", false), mk("b1", false)};
    auto key = [](const Verdict& v) { return v.instance_id.substr(0, 1); };
    auto rates = extract::failure_rate(verdicts, key);
    REQUIRE(rates.size() == 2);
    CHECK(rates[0].first == "a");
    CHECK(rates[0].second == doctest::Approx(0.6));
    CHECK(rates[1].first == "b");
    CHECK(rates[1].second == doctest::Approx(0.0));
}

TEST_CASE("failure_rate empty input yields empty table") {
    auto rates = extract::failure_rate({}, [](const Verdict&) { return ""; });
    CHECK(rates.empty());
}

TEST_CASE("failure_rate invariant under permutation") {
    std::mt19937 rng(11);
    std::vector<Verdict> verdicts;
    for (int i = 0; i < 40; ++i) {
        Verdict v;
        v.instance_id = "id" + std::to_string(i);
        v.method = Method::kRegex;
        v.parse_failed = rng() % 2;
        verdicts.push_back(v);
    }
    auto key = [](const Verdict& v) { return std::to_string(v.instance_id.size() % 3); };
    auto base = extract::failure_rate(verdicts, key);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(verdicts.begin(), verdicts.end(), rng);
        CHECK(extract::failure_rate(verdicts, key) == base);
    }
}
