// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "evmscan/binning.hpp"
#include "evmscan/error.hpp"
#include "test_util.hpp"

using namespace evmscan;
using namespace evmscan::testutil;

namespace {

// Independent re-implementation used as the best_split oracle: enumerate
// every candidate and recompute entropies from scratch.
double oracle_entropy(const std::vector<int>& labels) {
    int ones = 0;
    for (int l : labels) ones += l;
    const double n = static_cast<double>(labels.size());
    double h = 0;
    for (double c : {double(ones), n - ones}) {
        if (c == 0) continue;
        h -= (c / n) * std::log2(c / n);
    }
    return h;
}

double oracle_gain(const std::vector<double>& values, const std::vector<int>& labels, double split) {
    std::vector<int> high, low;
    for (std::size_t i = 0; i < values.size(); ++i)
        (values[i] >= split ? high : low).push_back(labels[i]);
    if (high.empty() || low.empty()) return 0;
    const double n = static_cast<double>(values.size());
    return oracle_entropy(labels) - high.size() / n * oracle_entropy(high) -
           low.size() / n * oracle_entropy(low);
}

double oracle_best_split(const std::vector<double>& values, const std::vector<int>& labels) {
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) return std::numeric_limits<double>::infinity();
    std::vector<double> candidates = distinct;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
        candidates.push_back((distinct[i] + distinct[i + 1]) / 2);
    std::sort(candidates.begin(), candidates.end());
    double best = candidates.front(), best_gain = -1;
    for (double c : candidates) {
        const double g = oracle_gain(values, labels, c);
        if (g > best_gain) best_gain = g, best = c;
    }
    return best;
}

}  // namespace

TEST_CASE("entropy") {
    CHECK(entropy(std::vector<int>{0, 0, 1, 1}) == doctest::Approx(1.0));
    CHECK(entropy(std::vector<int>{1, 1, 1}) == 0.0);
    // -(3/4)log2(3/4) - (1/4)log2(1/4)
    CHECK(entropy(std::vector<int>{0, 0, 0, 1}) == doctest::Approx(0.811278124459133).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(entropy(std::vector<int>{}), doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("information_gain") {
    const std::vector<double> values = {1, 2, 8, 9};
    const std::vector<int> labels = {0, 0, 1, 1};
    CHECK(information_gain(values, labels, 5) == doctest::Approx(1.0));
    CHECK(information_gain(values, labels, 0.5) == 0.0);  // split below min: one empty bin
    CHECK(information_gain(values, std::vector<int>{1, 1, 1, 1}, 5) == 0.0);
    CHECK_THROWS_WITH_AS(information_gain(std::vector<double>{}, std::vector<int>{}, 1),
                         doctest::Contains("EmptyInput"), Error);
    CHECK_THROWS_WITH_AS(information_gain(values, std::vector<int>{0, 1}, 1),
                         doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("information_gain stays within [0, H(S)]") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> values;
        std::vector<int> labels;
        const std::size_t n = 2 + rng.uniform_below(30);
        for (std::size_t i = 0; i < n; ++i) {
            values.push_back(double(rng.uniform_below(6)));
            labels.push_back(int(rng.uniform_below(2)));
        }
        const double split = rng.uniform() * 7 - 0.5;
        const double g = information_gain(values, labels, split);
        CHECK(g >= -1e-12);
        CHECK(g <= entropy(labels) + 1e-12);
    }
}

TEST_CASE("best_split examples") {
    CHECK(best_split(std::vector<double>{1, 2, 8, 9}, std::vector<int>{0, 0, 1, 1}) == 5.0);
    CHECK(std::isinf(best_split(std::vector<double>{3, 3, 3}, std::vector<int>{0, 1, 0})));
    CHECK(best_split(std::vector<double>{0, 1}, std::vector<int>{0, 1}) == 0.5);
}

TEST_CASE("property: best_split matches exhaustive enumeration") {
    Rng rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(49);
        std::vector<double> values;
        std::vector<int> labels;
        for (std::size_t i = 0; i < n; ++i) {
            values.push_back(double(rng.uniform_below(5)));
            labels.push_back(int(rng.uniform_below(2)));
        }
        const double got = best_split(values, labels);
        const double expected = oracle_best_split(values, labels);
        if (std::isinf(expected))
            CHECK(std::isinf(got));
        else
            CHECK(got == expected);
    }
}

TEST_CASE("fit_binning learns per-feature splits") {
    // feature 0 separates perfectly, feature 1 is constant
    const auto ds = make_dataset({"SEP", "CONST"},
                                 {{1, 4}, {2, 4}, {8, 4}, {9, 4}}, {0, 0, 1, 1});
    const auto model = fit_binning(ds);
    CHECK(model.split_points[0] == 5.0);
    CHECK(std::isinf(model.split_points[1]));

    const auto refit = fit_binning(ds);
    CHECK(refit.split_points == model.split_points);

    const auto single = make_dataset({"X"}, {{1}, {2}}, {1, 1});
    CHECK_THROWS_WITH_AS(fit_binning(single), doctest::Contains("SingleClassDataset"), Error);
}

TEST_CASE("transform applies the >= rule") {
    BinningModel model;
    model.feature_names = {"SSTORE", "SUB", "SLT", "CONST"};
    model.split_points = {17, 37, 0, BinningModel::kNoSplit};

    const std::vector<double> freq = {10, 57, 0, 123};
    const auto bits = transform(freq, model);
    CHECK(bits[0] == 0);  // 10 < 17
    CHECK(bits[1] == 1);  // 57 >= 37
    CHECK(bits[2] == 1);  // 0 >= 0 boundary
    CHECK(bits[3] == 0);  // sentinel never fires

    CHECK_THROWS_WITH_AS(transform(std::vector<double>{1, 2}, model),
                         doctest::Contains("MissingFeature"), Error);
}

TEST_CASE("property: transform is monotone per feature") {
    BinningModel model;
    model.feature_names = {"A"};
    Rng rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        model.split_points = {double(rng.uniform_below(40))};
        const double v = double(rng.uniform_below(40));
        const double higher = v + 1 + double(rng.uniform_below(10));
        const auto low_bit = transform(std::vector<double>{v}, model)[0];
        const auto high_bit = transform(std::vector<double>{higher}, model)[0];
        CHECK(high_bit >= low_bit);
    }
}

TEST_CASE("binning model serializes with inf sentinels") {
    const auto dir = temp_dir("binning_json");
    BinningModel model;
    model.feature_names = {"A", "B"};
    model.split_points = {2.5, BinningModel::kNoSplit};
    model.save(dir / "m.json");
    const auto back = BinningModel::load(dir / "m.json");
    CHECK(back.feature_names == model.feature_names);
    CHECK(back.split_points[0] == 2.5);
    CHECK(std::isinf(back.split_points[1]));
}
