// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/binning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "evmscan/error.hpp"

namespace evmscan {

double entropy(std::span<const int> labels) {
    if (labels.empty()) throw Error(ErrKind::EmptyInput, "entropy of an empty label set");
    std::map<int, std::size_t> counts;
    for (int label : labels) ++counts[label];
    const double n = static_cast<double>(labels.size());
    double h = 0;
    for (const auto& [label, count] : counts) {
        const double p = static_cast<double>(count) / n;
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

double information_gain(std::span<const double> values, std::span<const int> labels, double split) {
    if (values.empty()) throw Error(ErrKind::EmptyInput, "information gain of an empty set");
    if (values.size() != labels.size())
        throw Error(ErrKind::LengthMismatch, "values/labels length mismatch");

    std::vector<int> high, low;
    for (std::size_t i = 0; i < values.size(); ++i)
        (values[i] >= split ? high : low).push_back(labels[i]);
    if (high.empty() || low.empty()) return 0.0;

    const double n = static_cast<double>(labels.size());
    return entropy(labels) -
           (static_cast<double>(high.size()) / n) * entropy(high) -
           (static_cast<double>(low.size()) / n) * entropy(low);
}

double best_split(std::span<const double> values, std::span<const int> labels) {
    if (values.empty()) throw Error(ErrKind::EmptyInput, "best split of an empty set");
    if (values.size() != labels.size())
        throw Error(ErrKind::LengthMismatch, "values/labels length mismatch");

    std::vector<double> distinct(values.begin(), values.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) return BinningModel::kNoSplit;

    std::vector<double> candidates;
    candidates.reserve(2 * distinct.size() - 1);
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        candidates.push_back(distinct[i]);
        if (i + 1 < distinct.size()) candidates.push_back((distinct[i] + distinct[i + 1]) / 2.0);
    }
    std::sort(candidates.begin(), candidates.end());

    double best = candidates.front();
    double best_gain = -1;
    for (double c : candidates) {
        const double gain = information_gain(values, labels, c);
        if (gain > best_gain) {  // strict: first (smallest) candidate wins ties
            best_gain = gain;
            best = c;
        }
    }
    return best;
}

BinningModel fit_binning(const Dataset& train) {
    if (!train.has_both_classes())
        throw Error(ErrKind::SingleClassDataset, "binning needs both classes in training data");

    BinningModel model;
    model.feature_names = train.feature_names;
    model.split_points.resize(train.num_features());
    std::vector<double> column(train.size());
    for (std::size_t f = 0; f < train.num_features(); ++f) {
        for (std::size_t r = 0; r < train.size(); ++r) column[r] = train.rows[r][f];
        model.split_points[f] = best_split(column, train.labels);
    }
    return model;
}

std::vector<int> transform(std::span<const double> frequencies, const BinningModel& model) {
    if (frequencies.size() != model.split_points.size())
        throw Error(ErrKind::MissingFeature, "feature vector has " + std::to_string(frequencies.size()) +
                                                 " entries, model expects " +
                                                 std::to_string(model.split_points.size()));
    std::vector<int> bits(frequencies.size());
    for (std::size_t i = 0; i < frequencies.size(); ++i)
        bits[i] = frequencies[i] >= model.split_points[i] ? 1 : 0;
    return bits;
}

Dataset transform_dataset(const Dataset& ds, const BinningModel& model) {
    if (ds.feature_names != model.feature_names)
        throw Error(ErrKind::MissingFeature, "dataset features do not match binning model");
    Dataset out = ds;
    for (auto& row : out.rows) {
        const auto bits = transform(row, model);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = bits[i];
    }
    return out;
}

void BinningModel::save(const std::filesystem::path& path) const {
    nlohmann::json j = nlohmann::json::object();
    j["feature_order"] = feature_names;
    auto& splits = j["split_points"] = nlohmann::json::object();
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
        if (std::isinf(split_points[i]))
            splits[feature_names[i]] = "inf";
        else
            splits[feature_names[i]] = split_points[i];
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrKind::IoError, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

BinningModel BinningModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrKind::MissingFile, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrKind::IoError, "binning model parse: " + std::string(e.what()));
    }
    BinningModel model;
    model.feature_names = j.at("feature_order").get<std::vector<std::string>>();
    const auto& splits = j.at("split_points");
    for (const auto& name : model.feature_names) {
        const auto& v = splits.at(name);
        model.split_points.push_back(v.is_string() ? kNoSplit : v.get<double>());
    }
    return model;
}

}  // namespace evmscan
