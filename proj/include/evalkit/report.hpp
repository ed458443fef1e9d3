/// @file report.hpp
/// @brief CSV and Markdown table emission for analysis results.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evalkit/analytics.hpp"

namespace evalkit::report {

/// One rectangular table; cells are preformatted strings.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& t);
std::string to_markdown(const Table& t);

/// Percent with one decimal for human-readable reports, e.g. "97.5".
std::string format_percent(double fraction);
/// Full-precision value for machine-readable output.
std::string format_full(double value);

Table accuracy_table(const std::vector<analytics::AccuracyRow>& rows,
                     const std::string& group_name, bool as_percent);

Table failure_rate_table(const std::vector<std::pair<std::string, double>>& rates,
                         bool as_percent);

/// Delta rows rendered with the parenthetical parse/match split.
Table delta_table(const std::vector<analytics::DeltaDecomposition>& rows,
                  bool as_percent);

/// Per-category agreement with a trailing Average row.
Table agreement_table(const std::vector<std::pair<std::string, double>>& per_category);

Table rank_table(const std::map<std::string, double>& ranks,
                 const std::map<std::string, double>& deltas);

Table borda_table(const analytics::BordaResult& borda);

Table sweep_table(const std::vector<std::pair<double, double>>& curve);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evalkit::report
