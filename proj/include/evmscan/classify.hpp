// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evmscan/dataset.hpp"

namespace evmscan {

enum class Algo { naive_bayes, logistic_regression, decision_tree, knn };

Algo algo_from_string(std::string_view name);  // "nb" | "lr" | "dt" | "knn"
std::string_view algo_name(Algo algo);

struct Prediction {
    int label;     // 0 legitimate, 1 malicious
    double score;  // probability of class 1 where defined
};

struct TrainOptions {
    std::uint64_t seed = 0;
    double nb_alpha = 1.0;          // Laplace smoothing
    double lr_learning_rate = 0.1;  // batch gradient descent
    int lr_epochs = 500;
    double lr_l2 = 0.0;
    int dt_max_depth = 16;
    int dt_min_leaf = 1;
    int knn_k = 5;  // must be odd
};

// Immutable after training; safe to share across threads.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual Algo algo() const = 0;
    virtual Prediction predict(std::span<const int> bits) const = 0;
    virtual nlohmann::json to_json() const = 0;

    const std::vector<std::string>& feature_names() const { return feature_names_; }

    void save(const std::filesystem::path& path) const;

protected:
    std::vector<std::string> feature_names_;
};

// Requires strictly binary features and both classes present.
std::unique_ptr<Classifier> train(Algo algo, const Dataset& train_bits, const TrainOptions& opts = {});

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);
std::unique_ptr<Classifier> load_classifier(const std::filesystem::path& path);

// Per-epoch training losses of the last logistic-regression fit, exposed
// for the monotonicity check.
const std::vector<double>& last_lr_loss_curve();

// --- extra-trees feature ranking ------------------------------------------

struct FeatureRanking {
    // descending by importance; importances sum to 1
    std::vector<std::pair<std::string, double>> entries;
};

FeatureRanking rank_features(const Dataset& train_bits, int n_trees, std::uint64_t seed);

std::vector<std::string> select_top(const FeatureRanking& ranking, std::size_t m);

// Projects a dataset onto a feature subset, keeping the subset's order.
Dataset select_features(const Dataset& ds, const std::vector<std::string>& names);

}  // namespace evmscan
