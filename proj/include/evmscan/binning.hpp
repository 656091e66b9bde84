// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "evmscan/dataset.hpp"

namespace evmscan {

// One entropy-optimal threshold per feature; values >= split map to bit 1.
// Constant features get the +inf sentinel (bit always 0).
struct BinningModel {
    std::vector<std::string> feature_names;
    std::vector<double> split_points;

    static constexpr double kNoSplit = std::numeric_limits<double>::infinity();

    void save(const std::filesystem::path& path) const;
    static BinningModel load(const std::filesystem::path& path);
};

// Shannon entropy of a label multiset, bits.
double entropy(std::span<const int> labels);

// H(S) minus the bin-weighted entropy of the two bins {value >= split},
// {value < split}.
double information_gain(std::span<const double> values, std::span<const int> labels, double split);

// Maximizes information gain over all distinct observed values plus the
// midpoints between consecutive distinct sorted values; ties break toward
// the smallest candidate.
double best_split(std::span<const double> values, std::span<const int> labels);

BinningModel fit_binning(const Dataset& train);

std::vector<int> transform(std::span<const double> frequencies, const BinningModel& model);

// Same rows/labels/ids, every value binarized per the model.
Dataset transform_dataset(const Dataset& ds, const BinningModel& model);

}  // namespace evmscan
