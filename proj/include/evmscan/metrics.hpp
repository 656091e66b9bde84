// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "evmscan/explain.hpp"

namespace evmscan {

// Confusion-matrix metrics; malicious (label 1) is the positive class.
// Ratios with a zero denominator stay unset and print as "N/A".
struct Metrics {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::optional<double> tpr, fpr, precision, accuracy, f1;

    nlohmann::json to_json() const;
};

Metrics score(std::span<const int> predictions, std::span<const int> truths);

struct BaselineRow {
    std::string name;
    std::optional<double> tpr, fpr, precision, accuracy, f1;
};

// The published detector this pipeline is benchmarked against.
BaselineRow forta_baseline();

// CSV comparison table, our row first, "N/A" for unset ratios.
std::string compare_report(const std::string& our_name, const Metrics& ours,
                           std::span<const BaselineRow> baselines);

// Bar chart of signed contributions: malicious-supporting bars point up,
// legitimate-supporting down. Writes an SVG plus a CSV of the plotted data
// next to it (same stem, .csv extension).
void emit_contribution_chart(const Explanation& e, const std::filesystem::path& svg_path);

}  // namespace evmscan
