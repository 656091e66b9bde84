// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/smote.hpp"

#include <algorithm>
#include <cmath>

#include "evmscan/error.hpp"
#include "evmscan/rng.hpp"

namespace evmscan {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrKind::DimensionMismatch, "vectors of size " + std::to_string(a.size()) +
                                                    " and " + std::to_string(b.size()));
    double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<std::size_t> nearest_neighbors(const std::vector<std::vector<double>>& points,
                                           std::size_t self, std::size_t k) {
    if (points.size() <= k)
        throw Error(ErrKind::TooFewSamples, "need more than k=" + std::to_string(k) + " points, have " +
                                                std::to_string(points.size()));
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == self) continue;
        dist.emplace_back(euclidean_distance(points[self], points[i]), i);
    }
    std::stable_sort(dist.begin(), dist.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(dist[i].second);
    return out;
}

std::vector<std::vector<double>> smote(const std::vector<std::vector<double>>& minority,
                                       const SmoteConfig& cfg) {
    if (minority.empty()) throw Error(ErrKind::TooFewSamples, "minority class is empty");
    if (cfg.sampling_rate.has_value() == cfg.target_count.has_value())
        throw Error(ErrKind::UsageError, "set exactly one of sampling_rate / target_count");
    if (cfg.k_neighbors == 0 || cfg.k_neighbors >= minority.size())
        throw Error(ErrKind::TooFewSamples,
                    "k_neighbors must be in [1, minority size), got " + std::to_string(cfg.k_neighbors));

    const std::size_t m = minority.size();
    std::size_t n_synthetic;
    if (cfg.sampling_rate) {
        n_synthetic = *cfg.sampling_rate * m;
    } else {
        n_synthetic = *cfg.target_count > m ? *cfg.target_count - m : 0;
    }

    std::vector<std::vector<std::size_t>> neighbors(m);
    for (std::size_t i = 0; i < m; ++i) neighbors[i] = nearest_neighbors(minority, i, cfg.k_neighbors);

    // Parents cycle round-robin; each synthetic sample draws from its own
    // (seed, index) substream so generation order never matters.
    std::vector<std::vector<double>> synthetic;
    synthetic.reserve(n_synthetic);
    for (std::size_t j = 0; j < n_synthetic; ++j) {
        const std::size_t parent = j % m;
        Rng rng(derive_seed(cfg.seed, "smote", j));
        const auto& x = minority[parent];
        const auto& y = minority[neighbors[parent][rng.uniform_below(cfg.k_neighbors)]];
        const double t = rng.uniform();
        std::vector<double> z(x.size());
        for (std::size_t d = 0; d < x.size(); ++d) z[d] = x[d] + t * (y[d] - x[d]);
        synthetic.push_back(std::move(z));
    }
    return synthetic;
}

Dataset balance_with_smote(const Dataset& train, SmoteConfig cfg) {
    std::vector<std::vector<double>> minority;
    for (std::size_t i = 0; i < train.size(); ++i)
        if (train.labels[i] == 1) minority.push_back(train.rows[i]);

    if (!cfg.sampling_rate && !cfg.target_count) cfg.target_count = train.count_label(0);

    Dataset out = train;
    std::size_t serial = 0;
    for (auto& row : smote(minority, cfg)) {
        out.ids.push_back("smote" + std::to_string(serial++));
        out.rows.push_back(std::move(row));
        out.labels.push_back(1);
    }
    return out;
}

}  // namespace evmscan
