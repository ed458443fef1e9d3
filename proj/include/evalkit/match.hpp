/// @file match.hpp
/// @brief Binary verdicts per task category: exact choice match, ROUGE-L
/// with binarization, and math-answer normalization/equivalence.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evalkit/extract.hpp"
#include "evalkit/types.hpp"

namespace evalkit::match {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

enum class AnswerKind { kNumber, kRational, kText };

struct CanonicalAnswer {
    AnswerKind kind = AnswerKind::kText;
    std::optional<double> numeric_value;
    std::optional<long long> numerator;
    std::optional<long long> denominator;  // nonzero, fraction in lowest terms
    std::string normalized_text;

    /// Textual rendering; normalize_math applied to it reproduces the answer.
    std::string render() const;
};

struct MatchConfig {
    double rouge_tau = 0.5;
    double math_rel_tol = 1e-6;
    std::string pattern = extract::kDefaultPattern;
    bool pattern_case_insensitive = false;
    std::vector<std::string> unit_tokens = {"dollars", "units"};
};

/// Exact match of an extracted span against a choice letter, with an
/// option-text fallback when the choice list is available.
int mc_verdict(const std::string& extracted, const std::string& reference,
               const std::optional<std::vector<std::string>>& choices = std::nullopt);

/// Token-level longest-common-subsequence F-measure. Tokenization
/// case-folds and splits on non-alphanumeric runs.
RougeScore rouge_l(const std::string& candidate_span, const std::string& reference);

int rouge_verdict(const RougeScore& score, double tau);

std::vector<std::string> tokenize(const std::string& text);

/// Normalizes a raw answer string: LaTeX subset (\boxed, \frac, \dfrac,
/// \text, math delimiters), thousands separators, currency/unit tokens,
/// percent suffix, then numeric / rational / text classification.
CanonicalAnswer normalize_math(const std::string& raw,
                               const std::vector<std::string>& unit_tokens = {"dollars", "units"});

int math_equivalent(const CanonicalAnswer& a, const CanonicalAnswer& b, double rel_tol);

/// Full regex-method pipeline: extraction, then category dispatch.
Verdict regex_method_verdict(const EvalInstance& instance, const MatchConfig& cfg = {});

}  // namespace evalkit::match
