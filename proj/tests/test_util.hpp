// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "evmscan/dataset.hpp"
#include "evmscan/rng.hpp"

namespace evmscan::testutil {

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("evmscan_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    return path;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Dataset make_dataset(const std::vector<std::string>& features,
                            const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& labels) {
    Dataset ds;
    ds.feature_names = features;
    ds.rows = rows;
    ds.labels = labels;
    for (std::size_t i = 0; i < rows.size(); ++i) ds.ids.push_back("s" + std::to_string(i));
    return ds;
}

// Planted-signal corpus over the full opcode vocabulary: the first
// `n_planted` vocabulary entries carry clearly elevated counts in the
// malicious class, everything else is shared background noise.
Dataset planted_signal_corpus(std::size_t n_legit, std::size_t n_malicious,
                              std::size_t n_planted, std::uint64_t seed);

}  // namespace evmscan::testutil
