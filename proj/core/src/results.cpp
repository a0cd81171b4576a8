#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "veribench/csv.hpp"
#include "veribench/eval.hpp"

namespace veribench::eval {

namespace {

std::string fmt(double x, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

void open_or_throw(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::binary);
    if (!out) throw std::runtime_error("results: cannot open '" + path + "'");
}

std::vector<std::string> pivot_keys(const ResultsTable& t, std::vector<std::string>& order,
                                    std::map<std::string, std::array<std::string, 3>>& cells) {
    static const std::array<const char*, 3> schemes{"article", "source", "country"};
    for (const auto& row : t.rows) {
        std::string key = row.feature_label + "\x1f" + row.model_label + "\x1f" + row.trained_on;
        if (!cells.count(key)) {
            order.push_back(key);
            cells[key] = {"-", "-", "-"};
        }
        for (std::size_t s = 0; s < 3; ++s)
            if (row.scheme == schemes[s]) cells[key][s] = row.cell;
    }
    return order;
}

std::array<std::string, 3> split_key(const std::string& key) {
    auto a = key.find('\x1f');
    auto b = key.find('\x1f', a + 1);
    return {key.substr(0, a), key.substr(a + 1, b - a - 1), key.substr(b + 1)};
}

}  // namespace

std::string format_cell(double mean, double stddev, std::size_t folds) {
    if (folds <= 1) return fmt(mean, "%.3f");
    return fmt(mean, "%.3f") + " (+/- " + fmt(stddev, "%.2f") + ")";
}

ResultsTable aggregate_results(const std::vector<LabeledResult>& results) {
    if (results.empty()) throw std::invalid_argument("aggregate_results: no results");
    ResultsTable t;
    std::set<std::string> seen;
    for (const auto& lr : results) {
        std::string key = lr.feature_label + "\x1f" + lr.model_label + "\x1f" + lr.trained_on +
                          "\x1f" + lr.scheme;
        if (!seen.insert(key).second)
            throw std::invalid_argument("aggregate_results: duplicate row key (" +
                                        lr.feature_label + ", " + lr.model_label + ", " +
                                        lr.trained_on + ", " + lr.scheme + ")");
        ResultRow row;
        row.feature_label = lr.feature_label;
        row.model_label = lr.model_label;
        row.trained_on = lr.trained_on;
        row.scheme = lr.scheme;
        row.folds = lr.result.fold_accuracies.size();
        row.mean = lr.result.mean;
        row.stddev = lr.result.stddev;
        row.cell = format_cell(row.mean, row.stddev, row.folds);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_results_csv(const ResultsTable& t, const std::string& path) {
    std::ofstream out;
    open_or_throw(out, path);
    write_csv_row(out, {"feature", "model", "trained_on", "scheme", "folds", "mean", "stddev",
                        "accuracy"});
    for (const auto& r : t.rows) {
        write_csv_row(out, {r.feature_label, r.model_label, r.trained_on, r.scheme,
                            std::to_string(r.folds), fmt(r.mean),
                            r.folds <= 1 ? std::string() : fmt(r.stddev), r.cell});
    }
}

void write_results_text(const ResultsTable& t, const std::string& path) {
    std::vector<std::array<std::string, 6>> lines;
    lines.push_back({"feature", "model", "trained_on", "scheme", "folds", "accuracy"});
    for (const auto& r : t.rows)
        lines.push_back({r.feature_label, r.model_label, r.trained_on, r.scheme,
                         std::to_string(r.folds), r.cell});

    std::array<std::size_t, 6> width{};
    for (const auto& ln : lines)
        for (std::size_t c = 0; c < 6; ++c) width[c] = std::max(width[c], ln[c].size());

    std::ofstream out;
    open_or_throw(out, path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line;
        for (std::size_t c = 0; c < 6; ++c) {
            line += lines[i][c];
            if (c + 1 < 6) line.append(width[c] - lines[i][c].size() + 2, ' ');
        }
        out << line << '\n';
        if (i == 0) out << std::string(line.size(), '-') << '\n';
    }
}

void write_pivot_csv(const ResultsTable& t, const std::string& path) {
    std::vector<std::string> order;
    std::map<std::string, std::array<std::string, 3>> cells;
    pivot_keys(t, order, cells);

    std::ofstream out;
    open_or_throw(out, path);
    write_csv_row(out, {"feature", "model", "trained_on", "article", "source", "country"});
    for (const auto& key : order) {
        auto parts = split_key(key);
        const auto& c = cells[key];
        write_csv_row(out, {parts[0], parts[1], parts[2], c[0], c[1], c[2]});
    }
}

void write_pivot_text(const ResultsTable& t, const std::string& path) {
    std::vector<std::string> order;
    std::map<std::string, std::array<std::string, 3>> cells;
    pivot_keys(t, order, cells);

    std::vector<std::array<std::string, 6>> lines;
    lines.push_back({"feature", "model", "trained_on", "article", "source", "country"});
    for (const auto& key : order) {
        auto parts = split_key(key);
        const auto& c = cells[key];
        lines.push_back({parts[0], parts[1], parts[2], c[0], c[1], c[2]});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& ln : lines)
        for (std::size_t c = 0; c < 6; ++c) width[c] = std::max(width[c], ln[c].size());

    std::ofstream out;
    open_or_throw(out, path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string line;
        for (std::size_t c = 0; c < 6; ++c) {
            line += lines[i][c];
            if (c + 1 < 6) line.append(width[c] - lines[i][c].size() + 2, ' ');
        }
        out << line << '\n';
        if (i == 0) out << std::string(line.size(), '-') << '\n';
    }
}

std::string result_to_json(const ExperimentResult& r) {
    nlohmann::json j{
        {"schema", "veribench-result-v1"},
        {"manifest",
         {{"run_seed", r.manifest.run_seed},
          {"feature_signature", r.manifest.feature_signature},
          {"embedding_tag", r.manifest.embedding_tag},
          {"scheme", r.manifest.scheme},
          {"model", r.manifest.model},
          {"folds", r.manifest.folds},
          {"rows", r.manifest.rows}}},
        {"fold_accuracies", r.fold_accuracies},
        {"mean", r.mean},
        {"stddev", r.stddev},
        {"confusion",
         {{r.confusion.at(0, 0), r.confusion.at(0, 1)},
          {r.confusion.at(1, 0), r.confusion.at(1, 1)}}},
        {"confusion_row_defined", {r.confusion_row_defined[0], r.confusion_row_defined[1]}},
    };
    if (r.has_importance) {
        j["importance"] = r.importance_mean;
        j["concentration"] = {{"gini_coefficient", r.concentration.gini_coefficient},
                              {"normalized_entropy", r.concentration.normalized_entropy}};
    }
    return j.dump(2) + "\n";
}

}  // namespace veribench::eval
