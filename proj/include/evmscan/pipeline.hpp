// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "evmscan/classify.hpp"
#include "evmscan/dataset.hpp"
#include "evmscan/explain.hpp"
#include "evmscan/smote.hpp"

namespace evmscan {

// One root seed drives the whole run; every stage derives its own
// substream from it.
struct RunConfig {
    // exactly one input source: a frequency CSV, or a bytecode dir + manifest
    std::filesystem::path input_csv;
    std::filesystem::path bytecode_dir;
    std::filesystem::path manifest;
    std::filesystem::path out_dir = "out";

    std::uint64_t seed = 0;
    double malicious_train_fraction = 0.7;
    double legitimate_train_fraction = 0.9914;
    std::size_t smote_k = 5;
    std::optional<std::size_t> smote_target_count;  // default: match majority
    bool smote_after_binning = false;               // reproduction experiments only
    std::string algorithm = "lr";
    std::size_t top_m = 10;
    int extra_trees = 200;
    std::size_t lime_perturbations = 5000;
    double lime_kernel_width = 0;  // auto
    TrainOptions train_options;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::filesystem::path& path);

    // FNV-1a hash of the canonical JSON form, recorded in every artifact.
    std::string hash() const;
};

// featurize -> split -> smote -> fit binning -> transform -> rank/select ->
// train -> evaluate -> explain. Writes all stage artifacts under
// cfg.out_dir and returns the run summary.
nlohmann::json run_pipeline(const RunConfig& cfg);

struct ScanResult {
    Prediction prediction;
    Verdict verdict;
    Explanation explanation;
};

// Classify and explain one hex-encoded contract with previously trained
// artifacts. background_path points at the per-feature bit marginals the
// pipeline writes; absent, perturbations fall back to p = 0.5.
ScanResult scan(const std::filesystem::path& model_path, const std::filesystem::path& binning_path,
                const std::string& bytecode_hex, const LimeConfig& lime = {},
                const std::filesystem::path& background_path = {});

}  // namespace evmscan
