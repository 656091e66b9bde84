// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "evmscan/opcodes.hpp"

namespace evmscan {

// Per-contract opcode counts over the canonical vocabulary. UNKNOWN bytes
// are tallied separately and never enter the feature vector.
struct FrequencyVector {
    std::vector<std::uint64_t> counts;  // one slot per vocabulary entry
    std::uint64_t unknown = 0;
    std::uint64_t total = 0;  // sum of counts, excluding unknown
};

// Hex text -> bytes. Accepts an optional "0x" prefix and surrounding
// whitespace. Throws NonHexCharacter / OddNibbleCount.
std::vector<std::uint8_t> decode_hex(std::string_view text);

// Linear sweep from offset 0. PUSH immediates are consumed, not emitted;
// a PUSH whose immediates run past end-of-code is still emitted with the
// truncated tail consumed. Total over all byte sequences.
std::vector<int> disassemble(std::span<const std::uint8_t> code);

std::uint64_t immediate_bytes_consumed(std::span<const std::uint8_t> code);

FrequencyVector count_frequencies(std::span<const int> stream);

// decode + disassemble + count in one step.
FrequencyVector featurize_hex(std::string_view hex_text);

}  // namespace evmscan
