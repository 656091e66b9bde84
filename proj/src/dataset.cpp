// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evmscan/disasm.hpp"
#include "evmscan/error.hpp"
#include "evmscan/rng.hpp"

namespace evmscan {

std::size_t Dataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    double value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error(ErrKind::NonNumericCell,
                    "cell '" + cell + "' on line " + std::to_string(line_no) + " is not a number");
    }
    return value;
}

// Integral values print without a decimal point so count features
// round-trip byte-exactly; reals keep full precision.
std::string format_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error(ErrKind::EmptyDataset, path.string() + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_line(line);
    if (header.empty() || header.back() != "label")
        throw Error(ErrKind::MissingLabelColumn, "final column of " + path.string() + " must be 'label'");

    const bool has_id = !header.empty() && header.front() == "id";
    const std::size_t first_feature = has_id ? 1 : 0;

    Dataset ds;
    ds.feature_names.assign(header.begin() + static_cast<long>(first_feature), header.end() - 1);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrKind::RaggedRow, "line " + std::to_string(line_no) + " has " +
                                                std::to_string(cells.size()) + " cells, expected " +
                                                std::to_string(header.size()));
        }
        std::vector<double> row;
        row.reserve(ds.feature_names.size());
        for (std::size_t i = first_feature; i + 1 < cells.size(); ++i)
            row.push_back(parse_cell(cells[i], line_no));
        const double label = parse_cell(cells.back(), line_no);
        if (label != 0.0 && label != 1.0)
            throw Error(ErrKind::NonNumericCell, "label on line " + std::to_string(line_no) + " must be 0 or 1");
        ds.ids.push_back(has_id ? cells.front() : "row" + std::to_string(line_no - 1));
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(static_cast<int>(label));
    }
    if (ds.rows.empty()) throw Error(ErrKind::EmptyDataset, path.string() + " has no data rows");
    return ds;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + path.string());
    out << "id";
    for (const auto& name : ds.feature_names) out << ',' << name;
    out << ",label\n";
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        out << ds.ids[r];
        for (double v : ds.rows[r]) out << ',' << format_value(v);
        out << ',' << ds.labels[r] << '\n';
    }
    if (!out) throw Error(ErrKind::IoError, "write failed for " + path.string());
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitSpec& spec) {
    if (!ds.has_both_classes())
        throw Error(ErrKind::SingleClassDataset, "stratified split needs both classes");

    Dataset train, test;
    train.feature_names = test.feature_names = ds.feature_names;

    for (int label : {0, 1}) {
        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds.labels[i] == label) indices.push_back(i);

        Rng rng(derive_seed(spec.seed, "split", static_cast<std::uint64_t>(label)));
        for (std::size_t i = indices.size(); i > 1; --i)
            std::swap(indices[i - 1], indices[rng.uniform_below(i)]);

        const double fraction = label == 1 ? spec.malicious_train_fraction : spec.legitimate_train_fraction;
        const auto n_train = static_cast<std::size_t>(
            std::floor(fraction * static_cast<double>(indices.size())));
        for (std::size_t j = 0; j < indices.size(); ++j) {
            Dataset& dest = j < n_train ? train : test;
            dest.ids.push_back(ds.ids[indices[j]]);
            dest.rows.push_back(ds.rows[indices[j]]);
            dest.labels.push_back(label);
        }
    }
    return {std::move(train), std::move(test)};
}

Dataset build_from_bytecode_dir(const std::filesystem::path& dir,
                                const std::map<std::string, int>& manifest) {
    Dataset ds;
    ds.feature_names = canonical_vocabulary();
    for (const auto& [name, label] : manifest) {
        const auto path = dir / name;
        std::ifstream in(path);
        if (!in) throw Error(ErrKind::MissingFile, "manifest entry '" + name + "' not found in " + dir.string());
        std::string hex((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto fv = featurize_hex(hex);
        std::vector<double> row(fv.counts.begin(), fv.counts.end());
        ds.ids.push_back(name);
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(label);
    }
    return ds;
}

std::map<std::string, int> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open manifest " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrKind::IoError, "manifest parse: " + std::string(e.what()));
    }
    std::map<std::string, int> manifest;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int label = it.value().get<int>();
        if (label != 0 && label != 1)
            throw Error(ErrKind::IoError, "manifest label for '" + it.key() + "' must be 0 or 1");
        manifest[it.key()] = label;
    }
    return manifest;
}

}  // namespace evmscan
