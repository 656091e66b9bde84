// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "evmscan/error.hpp"
#include "evmscan/smote.hpp"
#include "test_util.hpp"

using namespace evmscan;
using namespace evmscan::testutil;

TEST_CASE("euclidean_distance") {
    CHECK(euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}) ==
          doctest::Approx(5.0));
    const std::vector<double> x = {1.5, -2, 7};
    CHECK(euclidean_distance(x, x) == 0.0);
    CHECK(euclidean_distance(std::vector<double>{1, 1, 1}, std::vector<double>{2, 3, 4}) ==
          doctest::Approx(std::sqrt(14.0)));
    CHECK_THROWS_WITH_AS(euclidean_distance(std::vector<double>{1}, std::vector<double>{1, 2}),
                         doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("nearest_neighbors excludes self and breaks ties by index") {
    const std::vector<std::vector<double>> points = {{0}, {1}, {10}};
    CHECK(nearest_neighbors(points, 0, 1) == std::vector<std::size_t>{1});
    CHECK(nearest_neighbors(points, 0, 2) == std::vector<std::size_t>{1, 2});

    const std::vector<std::vector<double>> dup = {{5}, {5}, {9}};
    CHECK(nearest_neighbors(dup, 0, 1) == std::vector<std::size_t>{1});  // duplicate at distance 0

    CHECK_THROWS_WITH_AS(nearest_neighbors(points, 0, 3), doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("nearest_neighbors agrees with brute force on random points") {
    Rng rng(21);
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 30; ++i) points.push_back({rng.uniform() * 10, rng.uniform() * 10});
    for (std::size_t self = 0; self < points.size(); ++self) {
        const auto got = nearest_neighbors(points, self, 5);
        // oracle: full pair scan with stable sort on (distance, index)
        std::vector<std::pair<double, std::size_t>> all;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i == self) continue;
            double sq = 0;
            for (std::size_t d = 0; d < 2; ++d)
                sq += (points[self][d] - points[i][d]) * (points[self][d] - points[i][d]);
            all.emplace_back(std::sqrt(sq), i);
        }
        std::stable_sort(all.begin(), all.end());
        for (std::size_t k = 0; k < 5; ++k) CHECK(got[k] == all[k].second);
    }
}

TEST_CASE("smote interpolation stays on the parent segment") {
    Rng rng(22);
    std::vector<std::vector<double>> minority;
    for (int i = 0; i < 20; ++i)
        minority.push_back({double(rng.uniform_below(50)), double(rng.uniform_below(50)),
                            double(rng.uniform_below(50))});

    SmoteConfig cfg;
    cfg.k_neighbors = 5;
    cfg.sampling_rate = 50;
    cfg.seed = 17;
    const auto synthetic = smote(minority, cfg);
    CHECK(synthetic.size() == 1000);

    for (std::size_t j = 0; j < synthetic.size(); ++j) {
        const auto& x = minority[j % minority.size()];
        const auto& z = synthetic[j];
        // componentwise within the bounding box of x and *some* neighbor;
        // conservatively check against the box over all of x's neighbors
        const auto nb = nearest_neighbors(minority, j % minority.size(), cfg.k_neighbors);
        for (std::size_t d = 0; d < z.size(); ++d) {
            double lo = x[d], hi = x[d];
            for (std::size_t n : nb) {
                lo = std::min(lo, minority[n][d]);
                hi = std::max(hi, minority[n][d]);
            }
            CHECK(z[d] >= lo);
            CHECK(z[d] <= hi);
            CHECK(z[d] >= 0);  // parents are non-negative counts
        }
    }
}

TEST_CASE("smote hand examples") {
    // x=(0,0), y=(2,4), t=0.5 -> (1,2)
    const std::vector<double> x = {0, 0}, y = {2, 4};
    const double t = 0.5;
    std::vector<double> z(2);
    for (std::size_t d = 0; d < 2; ++d) z[d] = x[d] + t * (y[d] - x[d]);
    CHECK(z == std::vector<double>{1, 2});

    // duplicate points: every synthetic sample equals the duplicated point
    std::vector<std::vector<double>> dup = {{3, 3}, {3, 3}};
    SmoteConfig cfg;
    cfg.k_neighbors = 1;
    cfg.sampling_rate = 10;
    for (const auto& s : smote(dup, cfg)) CHECK(s == std::vector<double>{3, 3});
}

TEST_CASE("smote determinism and config validation") {
    std::vector<std::vector<double>> minority = {{0, 1}, {2, 2}, {5, 1}, {4, 4}, {1, 0}, {3, 3}};
    SmoteConfig cfg;
    cfg.k_neighbors = 3;
    cfg.target_count = 20;
    cfg.seed = 99;
    CHECK(smote(minority, cfg) == smote(minority, cfg));
    CHECK(smote(minority, cfg).size() == 14);

    SmoteConfig bad = cfg;
    bad.sampling_rate = 2;  // both set
    CHECK_THROWS_WITH_AS(smote(minority, bad), doctest::Contains("UsageError"), Error);

    SmoteConfig big_k = cfg;
    big_k.k_neighbors = 6;
    CHECK_THROWS_WITH_AS(smote(minority, big_k), doctest::Contains("TooFewSamples"), Error);

    CHECK_THROWS_WITH_AS(smote({}, cfg), doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("balance_with_smote equalizes class counts") {
    auto ds = make_dataset({"A", "B"}, {}, {});
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        ds.rows.push_back({double(rng.uniform_below(8)), double(rng.uniform_below(8))});
        ds.labels.push_back(0);
        ds.ids.push_back("l" + std::to_string(i));
    }
    for (int i = 0; i < 8; ++i) {
        ds.rows.push_back({double(20 + rng.uniform_below(8)), double(20 + rng.uniform_below(8))});
        ds.labels.push_back(1);
        ds.ids.push_back("m" + std::to_string(i));
    }
    SmoteConfig cfg;
    cfg.k_neighbors = 3;
    const auto balanced = balance_with_smote(ds, cfg);
    CHECK(balanced.count_label(0) == balanced.count_label(1));
    CHECK(balanced.count_label(1) == 40);
}
