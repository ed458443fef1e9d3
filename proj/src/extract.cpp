#include "evalkit/extract.hpp"

#include <map>
#include <regex>

namespace evalkit::extract {

namespace {

std::string trim_span(std::string s) {
    const char* ws = " \t\r\n";
    size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(ws);
    s = s.substr(b, e - b + 1);
    // one trailing sentence-ending period, but not "..." ellipses
    if (s.size() >= 2 && s.back() == '.' && s[s.size() - 2] != '.')
        s.pop_back();
    else if (s == ".")
        s.clear();
    return s;
}

}  // namespace

Extraction extract_final_answer(const std::string& candidate,
                                const std::string& pattern,
                                bool case_insensitive) {
    // compiled patterns are cached; batch runs reuse one pattern throughout
    thread_local std::map<std::pair<std::string, bool>, std::regex> cache;
    auto cache_key = std::make_pair(pattern, case_insensitive);
    auto cached = cache.find(cache_key);
    if (cached == cache.end()) {
        std::regex re;
        try {
            auto flags = std::regex::ECMAScript;
            if (case_insensitive) flags |= std::regex::icase;
            re.assign(pattern, flags);
        } catch (const std::regex_error& e) {
            throw PatternError(std::string("invalid extraction pattern: ") + e.what());
        }
        if (re.mark_count() < 1)
            throw PatternError("extraction pattern must have a capture group");
        cached = cache.emplace(cache_key, std::move(re)).first;
    }
    const std::regex& re = cached->second;

    // Last match wins, counting overlapping starts: a greedy capture from
    // an earlier marker must not shadow a later one on the same line.
    Extraction result;
    size_t pos = 0;
    std::smatch m;
    while (pos <= candidate.size() &&
           std::regex_search(candidate.begin() + pos, candidate.end(), m, re)) {
        size_t offset = pos + static_cast<size_t>(m.position(0));
        result.success = true;
        result.span = trim_span(m[1].str());
        result.match_offset = offset;
        pos = offset + 1;
    }
    return result;
}

std::vector<std::pair<std::string, double>> failure_rate(
    const std::vector<Verdict>& verdicts,
    const std::function<std::string(const Verdict&)>& group_key) {
    std::map<std::string, std::pair<size_t, size_t>> counts;  // failed, total
    for (const auto& v : verdicts) {
        auto& [failed, total] = counts[group_key(v)];
        if (v.parse_failed) ++failed;
        ++total;
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(counts.size());
    for (const auto& [key, c] : counts)
        out.emplace_back(key, static_cast<double>(c.first) / static_cast<double>(c.second));
    return out;
}

}  // namespace evalkit::extract
