// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evmscan/dataset.hpp"

namespace evmscan {

struct SmoteConfig {
    std::size_t k_neighbors = 5;
    // Exactly one of the two must be set: N synthetic samples per minority
    // sample, or a desired minority total after oversampling.
    std::optional<std::size_t> sampling_rate;
    std::optional<std::size_t> target_count;
    std::uint64_t seed = 0;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Indices of the k nearest points to points[self], self excluded, distance
// ties broken by index order.
std::vector<std::size_t> nearest_neighbors(const std::vector<std::vector<double>>& points,
                                           std::size_t self, std::size_t k);

// Synthetic minority rows: x + t*(y - x) with y one of x's k nearest
// minority neighbors and t ~ Uniform[0,1], both seeded.
std::vector<std::vector<double>> smote(const std::vector<std::vector<double>>& minority,
                                       const SmoteConfig& cfg);

// Appends label-1 synthetic rows to a copy of train. With target_count
// unset and sampling_rate unset, balances up to the majority class size.
Dataset balance_with_smote(const Dataset& train, SmoteConfig cfg);

}  // namespace evmscan
