// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace evmscan {

// Row-major labeled feature matrix. Rows hold opcode frequencies before
// binning and {0,1} values after; both travel through the same type.
struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;  // 0 legitimate, 1 malicious

    std::size_t size() const { return rows.size(); }
    std::size_t num_features() const { return feature_names.size(); }
    std::size_t count_label(int label) const;
    bool has_both_classes() const { return count_label(0) > 0 && count_label(1) > 0; }
};

struct SplitSpec {
    double malicious_train_fraction = 0.7;
    double legitimate_train_fraction = 0.7;
    std::uint64_t seed = 0;
};

// Header row names feature columns; an optional leading "id" column carries
// contract identifiers; the final column must be named "label".
Dataset load_csv(const std::filesystem::path& path);

void save_csv(const Dataset& ds, const std::filesystem::path& path);

// Per class: floor(fraction * count) rows to train, remainder to test,
// after a deterministic seed-keyed shuffle.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitSpec& spec);

// Manifest maps bytecode file name (relative to dir) -> label.
Dataset build_from_bytecode_dir(const std::filesystem::path& dir,
                                const std::map<std::string, int>& manifest);

// JSON object {file_name: label}.
std::map<std::string, int> load_manifest(const std::filesystem::path& path);

}  // namespace evmscan
