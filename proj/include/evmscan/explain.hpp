// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "evmscan/classify.hpp"

namespace evmscan {

struct LimeConfig {
    std::size_t n_perturbations = 5000;
    double kernel_width = 0;  // <= 0 selects the 0.75 * sqrt(d) default
    std::uint64_t seed = 0;
};

struct ExplanationEntry {
    std::string feature;
    int actual_bit;
    bool supports_malicious;  // sign of the surrogate term at this instance
    double contribution;      // absolute value of that term
};

struct Explanation {
    std::string instance_id;
    int predicted_label = 0;
    double intercept = 0;
    std::vector<ExplanationEntry> entries;

    // surrogate score at the explained instance
    double surrogate_at_instance() const;

    nlohmann::json to_json() const;
    void write_csv(const std::filesystem::path& path) const;
};

// Perturbations drawn per-feature from the training marginals; the first
// sample is the instance itself.
std::vector<std::vector<int>> perturb(std::span<const int> x, const LimeConfig& cfg,
                                      std::span<const double> marginals);

// exp(-D(x,z)^2 / sigma^2), D Euclidean over bits.
double proximity(std::span<const int> x, std::span<const int> z, double sigma);

// Per-feature probability of bit 1 over a binary training set.
std::vector<double> feature_marginals(const Dataset& train_bits);

Explanation fit_surrogate(const Classifier& model, std::span<const int> x, const LimeConfig& cfg,
                          std::span<const double> marginals, const std::string& instance_id = {});

enum class Verdict { legitimate, malicious };

std::string_view to_string(Verdict v);

// Class with the larger summed contribution; ties fall back to the
// classifier's own prediction.
Verdict aggregate_verdict(const Explanation& e);

}  // namespace evmscan
