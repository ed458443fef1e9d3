#include "evalkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace evalkit::report {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string arrow(double delta) {
    if (delta > 0) return "↑";  // regex places the model too high
    if (delta < 0) return "↓";
    return "=";
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "," : "") << csv_escape(t.header[i]);
    out << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(row[i]);
        out << '\n';
    }
    return out.str();
}

std::string to_markdown(const Table& t) {
    std::ostringstream out;
    out << "|";
    for (const auto& h : t.header) out << " " << h << " |";
    out << "\n|";
    for (size_t i = 0; i < t.header.size(); ++i) out << " --- |";
    out << "\n";
    for (const auto& row : t.rows) {
        out << "|";
        for (const auto& cell : row) out << " " << cell << " |";
        out << "\n";
    }
    return out.str();
}

std::string format_percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
    return buf;
}

std::string format_full(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Table accuracy_table(const std::vector<analytics::AccuracyRow>& rows,
                     const std::string& group_name, bool as_percent) {
    Table t;
    t.header = {group_name, "accuracy", "n", "excluded"};
    for (const auto& r : rows)
        t.rows.push_back({r.group,
                          as_percent ? format_percent(r.accuracy) : format_full(r.accuracy),
                          std::to_string(r.n), std::to_string(r.excluded)});
    return t;
}

Table failure_rate_table(const std::vector<std::pair<std::string, double>>& rates,
                         bool as_percent) {
    Table t;
    t.header = {"group", "parse_failure_rate"};
    for (const auto& [group, rate] : rates)
        t.rows.push_back({group, as_percent ? format_percent(rate) : format_full(rate)});
    return t;
}

Table delta_table(const std::vector<analytics::DeltaDecomposition>& rows,
                  bool as_percent) {
    Table t;
    if (as_percent) {
        t.header = {"group", "delta_accuracy"};
        for (const auto& r : rows)
            t.rows.push_back({r.group, format_percent(r.delta_total) + " (" +
                                           format_percent(r.delta_parse) + " / " +
                                           format_percent(r.delta_match) + ")"});
    } else {
        t.header = {"group", "delta_total", "delta_parse", "delta_match"};
        for (const auto& r : rows)
            t.rows.push_back({r.group, format_full(r.delta_total),
                              format_full(r.delta_parse), format_full(r.delta_match)});
    }
    return t;
}

Table agreement_table(const std::vector<std::pair<std::string, double>>& per_category) {
    Table t;
    t.header = {"category", "agreement"};
    double sum = 0.0;
    for (const auto& [cat, rate] : per_category) {
        t.rows.push_back({cat, format_percent(rate)});
        sum += rate;
    }
    if (!per_category.empty())
        t.rows.push_back({"Average", format_percent(sum / per_category.size())});
    return t;
}

Table rank_table(const std::map<std::string, double>& ranks,
                 const std::map<std::string, double>& deltas) {
    Table t;
    t.header = {"model", "rank", "rank_delta"};
    for (const auto& [model, rank] : ranks) {
        std::string delta_cell;
        if (auto it = deltas.find(model); it != deltas.end()) {
            double d = it->second;
            delta_cell = arrow(d) + format_full(std::fabs(d));
        }
        t.rows.push_back({model, format_full(rank), delta_cell});
    }
    return t;
}

Table borda_table(const analytics::BordaResult& borda) {
    Table t;
    t.header = {"position", "model", "borda_points"};
    size_t pos = 1;
    for (const auto& model : borda.ordering)
        t.rows.push_back({std::to_string(pos++), model,
                          format_full(borda.points.at(model))});
    return t;
}

Table sweep_table(const std::vector<std::pair<double, double>>& curve) {
    Table t;
    t.header = {"theta", "accuracy"};
    for (const auto& [theta, acc] : curve)
        t.rows.push_back({format_full(theta), format_full(acc)});
    return t;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path.string());
    out << content;
}

}  // namespace evalkit::report
