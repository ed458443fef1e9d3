#include "evalkit/match.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>

namespace evalkit::match {

namespace {

std::string casefold(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string collapse_ws(const std::string& s) {
    std::string out;
    bool in_ws = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty()) out += ' ';
        in_ws = false;
        out += char(c);
    }
    return out;
}

// Replaces every \name{...} with its balanced-brace body.
std::string unwrap_command(std::string s, const std::string& name) {
    const std::string marker = "\\" + name + "{";
    size_t pos;
    while ((pos = s.find(marker)) != std::string::npos) {
        size_t body = pos + marker.size();
        int depth = 1;
        size_t i = body;
        for (; i < s.size() && depth > 0; ++i) {
            if (s[i] == '{') ++depth;
            else if (s[i] == '}') --depth;
        }
        if (depth != 0) break;  // unbalanced, leave as-is
        std::string inner = s.substr(body, i - 1 - body);
        s = s.substr(0, pos) + inner + s.substr(i);
    }
    return s;
}

// \frac{a}{b} -> a/b
std::string rewrite_frac(std::string s) {
    const std::string marker = "\\frac{";
    size_t pos;
    while ((pos = s.find(marker)) != std::string::npos) {
        size_t a_begin = pos + marker.size();
        int depth = 1;
        size_t i = a_begin;
        for (; i < s.size() && depth > 0; ++i) {
            if (s[i] == '{') ++depth;
            else if (s[i] == '}') --depth;
        }
        if (depth != 0 || i >= s.size() || s[i] != '{') break;
        std::string a = s.substr(a_begin, i - 1 - a_begin);
        size_t b_begin = i + 1;
        depth = 1;
        size_t j = b_begin;
        for (; j < s.size() && depth > 0; ++j) {
            if (s[j] == '{') ++depth;
            else if (s[j] == '}') --depth;
        }
        if (depth != 0) break;
        std::string b = s.substr(b_begin, j - 1 - b_begin);
        s = s.substr(0, pos) + a + "/" + b + s.substr(j);
    }
    return s;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    // integer, decimal, or scientific only; reject nan/inf/hex
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    bool digits = false, dot = false, exp = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '.' && !dot && !exp) {
            dot = true;
        } else if ((c == 'e' || c == 'E') && digits && !exp) {
            exp = true;
            if (i + 1 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-')) ++i;
            digits = false;
        } else {
            return false;
        }
    }
    if (!digits) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_integer(const std::string& s, long long& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// ASCII-only classification for the scoring hot path; the program stays in
// the "C" locale, so these agree with std::isalnum/std::tolower.
inline bool ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline char ascii_lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? char(c + 32) : char(c);
}

// Token views for the scoring hot path: same alnum-run/casefold rule as
// tokenize(), but without materializing strings.
struct TokenView {
    const char* p;
    size_t n;
};

bool token_eq(const TokenView& a, const TokenView& b) {
    if (a.n != b.n) return false;
    for (size_t k = 0; k < a.n; ++k)
        if (ascii_lower(static_cast<unsigned char>(a.p[k])) !=
            ascii_lower(static_cast<unsigned char>(b.p[k])))
            return false;
    return true;
}

// Fills `inline_buf` when the text has at most `cap` tokens, spilling to
// `overflow` otherwise. Returns the token array and its length.
std::pair<const TokenView*, size_t> scan_tokens(const std::string& text,
                                                TokenView* inline_buf, size_t cap,
                                                std::vector<TokenView>& overflow) {
    size_t n = 0;
    size_t i = 0;
    auto push = [&](TokenView t) {
        if (!overflow.empty() || n == cap) {
            if (overflow.empty()) overflow.assign(inline_buf, inline_buf + n);
            overflow.push_back(t);
        } else {
            inline_buf[n] = t;
        }
        ++n;
    };
    while (i < text.size()) {
        if (!ascii_alnum(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        size_t b = i;
        while (i < text.size() && ascii_alnum(static_cast<unsigned char>(text[i]))) ++i;
        push({text.data() + b, i - b});
    }
    if (!overflow.empty()) return {overflow.data(), overflow.size()};
    return {inline_buf, n};
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (ascii_alnum(c)) {
            cur += ascii_lower(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

int mc_verdict(const std::string& extracted, const std::string& reference,
               const std::optional<std::vector<std::string>>& choices) {
    auto normalize = [](const std::string& s) {
        std::string t = trim(s);
        auto is_wrap = [](unsigned char c) {
            return std::ispunct(c) || std::isspace(c);
        };
        size_t b = 0, e = t.size();
        while (b < e && is_wrap(static_cast<unsigned char>(t[b]))) ++b;
        while (e > b && is_wrap(static_cast<unsigned char>(t[e - 1]))) --e;
        return casefold(t.substr(b, e - b));
    };
    std::string ext = normalize(extracted);
    std::string ref = casefold(trim(reference));
    if (ext == ref) return 1;
    if (choices && ref.size() == 1 && ref[0] >= 'a') {
        size_t idx = static_cast<size_t>(ref[0] - 'a');
        if (idx < choices->size() && ext == normalize((*choices)[idx])) return 1;
    }
    return 0;
}

RougeScore rouge_l(const std::string& candidate_span, const std::string& reference) {
    constexpr size_t kInline = 128;
    TokenView cand_buf[kInline], ref_buf[kInline];
    std::vector<TokenView> cand_spill, ref_spill;
    auto [cand, nc] = scan_tokens(candidate_span, cand_buf, kInline, cand_spill);
    auto [ref, nr] = scan_tokens(reference, ref_buf, kInline, ref_spill);
    RougeScore s;
    if (nc == 0 || nr == 0) return s;

    // token-level LCS, rolling rows
    uint32_t prev_buf[kInline + 1], cur_buf[kInline + 1];
    std::vector<uint32_t> prev_spill, cur_spill;
    uint32_t* prev = prev_buf;
    uint32_t* cur = cur_buf;
    if (nr >= kInline) {
        prev_spill.resize(nr + 1);
        cur_spill.resize(nr + 1);
        prev = prev_spill.data();
        cur = cur_spill.data();
    }
    std::fill(prev, prev + nr + 1, 0u);
    cur[0] = 0;
    for (size_t i = 1; i <= nc; ++i) {
        for (size_t j = 1; j <= nr; ++j) {
            if (token_eq(cand[i - 1], ref[j - 1]))
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    double lcs = static_cast<double>(prev[nr]);
    s.precision = lcs / static_cast<double>(nc);
    s.recall = lcs / static_cast<double>(nr);
    if (s.precision + s.recall > 0.0)
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

int rouge_verdict(const RougeScore& score, double tau) {
    return score.f1 >= tau ? 1 : 0;
}

CanonicalAnswer normalize_math(const std::string& raw,
                               const std::vector<std::string>& unit_tokens) {
    std::string s = raw;
    replace_all(s, "\\(", " ");
    replace_all(s, "\\)", " ");
    replace_all(s, "\\[", " ");
    replace_all(s, "\\]", " ");
    replace_all(s, "$", " ");
    replace_all(s, "\\dfrac", "\\frac");
    s = unwrap_command(s, "boxed");
    s = unwrap_command(s, "text");
    s = rewrite_frac(s);
    s = trim(s);

    // trailing punctuation
    while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == ';' ||
                          s.back() == ':' || s.back() == '!' || s.back() == '?')) {
        s.pop_back();
        s = trim(s);
    }

    bool percent = false;
    if (!s.empty() && s.back() == '%') {
        percent = true;
        s.pop_back();
        s = trim(s);
    }

    // leading/trailing unit words
    auto strip_unit = [&](std::string t) {
        for (bool changed = true; changed;) {
            changed = false;
            std::string folded = casefold(t);
            for (const auto& unit : unit_tokens) {
                std::string u = casefold(unit);
                if (folded.size() > u.size() &&
                    folded.compare(folded.size() - u.size(), u.size(), u) == 0 &&
                    std::isspace(static_cast<unsigned char>(t[t.size() - u.size() - 1]))) {
                    t = trim(t.substr(0, t.size() - u.size()));
                    changed = true;
                    break;
                }
                if (folded.size() > u.size() && folded.compare(0, u.size(), u) == 0 &&
                    std::isspace(static_cast<unsigned char>(t[u.size()]))) {
                    t = trim(t.substr(u.size()));
                    changed = true;
                    break;
                }
            }
            if (!changed && !t.empty() && t.back() == '%') {
                percent = true;
                t = trim(t.substr(0, t.size() - 1));
                changed = true;
            }
        }
        return t;
    };
    s = strip_unit(s);

    // thousands separators: comma with digits on both sides
    for (size_t i = 1; i + 1 < s.size();) {
        if (s[i] == ',' && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
            std::isdigit(static_cast<unsigned char>(s[i + 1])))
            s.erase(i, 1);
        else
            ++i;
    }
    s = trim(s);

    CanonicalAnswer ans;
    double value = 0.0;
    if (parse_number(s, value)) {
        ans.kind = AnswerKind::kNumber;
        ans.numeric_value = percent ? value / 100.0 : value;
        ans.normalized_text = ans.render();
        return ans;
    }
    if (size_t slash = s.find('/'); slash != std::string::npos) {
        long long num = 0, den = 0;
        if (parse_integer(trim(s.substr(0, slash)), num) &&
            parse_integer(trim(s.substr(slash + 1)), den) && den != 0) {
            if (percent) {
                ans.kind = AnswerKind::kNumber;
                ans.numeric_value =
                    static_cast<double>(num) / static_cast<double>(den) / 100.0;
                ans.normalized_text = ans.render();
                return ans;
            }
            if (den < 0) {
                num = -num;
                den = -den;
            }
            long long g = std::gcd(std::llabs(num), den);
            if (g > 1) {
                num /= g;
                den /= g;
            }
            ans.kind = AnswerKind::kRational;
            ans.numerator = num;
            ans.denominator = den;
            ans.numeric_value = static_cast<double>(num) / static_cast<double>(den);
            ans.normalized_text = ans.render();
            return ans;
        }
    }
    ans.kind = AnswerKind::kText;
    ans.normalized_text = collapse_ws(casefold(s));
    if (percent && !ans.normalized_text.empty()) ans.normalized_text += " %";
    return ans;
}

std::string CanonicalAnswer::render() const {
    switch (kind) {
        case AnswerKind::kNumber: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *numeric_value);
            return std::string(buf, ptr);
        }
        case AnswerKind::kRational:
            return std::to_string(*numerator) + "/" + std::to_string(*denominator);
        case AnswerKind::kText:
            return normalized_text;
    }
    return normalized_text;
}

int math_equivalent(const CanonicalAnswer& a, const CanonicalAnswer& b, double rel_tol) {
    auto numeric = [](const CanonicalAnswer& x) -> std::optional<double> {
        if (x.kind == AnswerKind::kText) {
            double v;
            if (parse_number(x.normalized_text, v)) return v;
            return std::nullopt;
        }
        return x.numeric_value;
    };
    auto va = numeric(a);
    auto vb = numeric(b);
    if (a.kind != AnswerKind::kText || b.kind != AnswerKind::kText) {
        if (!va || !vb) return 0;
        double scale = std::max({1.0, std::fabs(*va), std::fabs(*vb)});
        return std::fabs(*va - *vb) <= rel_tol * scale ? 1 : 0;
    }
    return a.normalized_text == b.normalized_text ? 1 : 0;
}

Verdict regex_method_verdict(const EvalInstance& instance, const MatchConfig& cfg) {
    Verdict v;
    v.instance_id = instance.id;
    v.method = Method::kRegex;
    auto ext = extract::extract_final_answer(instance.candidate, cfg.pattern,
                                             cfg.pattern_case_insensitive);
    if (!ext.success) {
        v.parse_failed = true;
        v.verdict = 0;
        return v;
    }
    v.extracted = ext.span;
    switch (instance.category) {
        case TaskCategory::kMultipleChoice:
            v.verdict = mc_verdict(*ext.span, instance.reference, instance.choices);
            break;
        case TaskCategory::kContextExtraction:
            v.verdict = rouge_verdict(rouge_l(*ext.span, instance.reference), cfg.rouge_tau);
            break;
        case TaskCategory::kOpenFormMath:
            v.verdict = math_equivalent(normalize_math(*ext.span, cfg.unit_tokens),
                                        normalize_math(instance.reference, cfg.unit_tokens),
                                        cfg.math_rel_tol);
            break;
    }
    return v;
}

}  // namespace evalkit::match
