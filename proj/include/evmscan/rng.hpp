// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace evmscan {

// splitmix64: deterministic across platforms, unlike the stdlib
// distributions layered over std::mt19937.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n), n > 0
    std::uint64_t uniform_below(std::uint64_t n) {
        // modulo bias is < 2^-40 for n below 2^24; fine for index draws
        return next_u64() % n;
    }

private:
    std::uint64_t state_;
};

// FNV-1a, used to key per-stage RNG substreams and to hash run configs.
constexpr std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// One root seed per run; each stage (and each sample within a stage)
// gets an independent substream so changing one stage's draws does not
// perturb another's.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::uint64_t index = 0) {
    Rng mix(root ^ fnv1a(stage) ^ (index * 0x9E3779B97F4A7C15ULL));
    return mix.next_u64();
}

}  // namespace evmscan
