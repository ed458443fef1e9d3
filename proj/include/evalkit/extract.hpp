/// @file extract.hpp
/// @brief Final-answer extraction and parse-failure accounting.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evalkit/types.hpp"

namespace evalkit::extract {

inline constexpr const char* kDefaultPattern = R"(Final answer:\s*(.+))";

struct Extraction {
    bool success = false;
    std::optional<std::string> span;          // captured group, trimmed
    std::optional<size_t> match_offset;       // character index of the match
};

/// Thrown when the pattern itself is bad; distinct from a parse failure.
struct PatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Applies `pattern` to `candidate`; on multiple matches the last wins.
/// The captured span is trimmed of surrounding whitespace and one trailing
/// sentence-ending period. The dot in the pattern does not cross newlines.
Extraction extract_final_answer(const std::string& candidate,
                                const std::string& pattern = kDefaultPattern,
                                bool case_insensitive = false);

/// Per-group regex parse-failure rate. `group_key` maps an instance id to
/// its grouping key; groups are emitted in sorted key order.
std::vector<std::pair<std::string, double>> failure_rate(
    const std::vector<Verdict>& verdicts,
    const std::function<std::string(const Verdict&)>& group_key);

}  // namespace evalkit::extract
