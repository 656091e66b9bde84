// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace evmscan {

// Canonical opcode index into the fixed feature vocabulary; kUnknown marks
// bytes outside the vocabulary (unassigned, INVALID, or opcodes the feature
// set deliberately excludes). UNKNOWN never appears in a feature vector.
constexpr int kUnknown = -1;

struct InstructionInfo {
    std::string_view mnemonic;        // "UNASSIGNED" for bytes with no instruction
    std::uint8_t immediate_bytes;     // nonzero only for the PUSH family
    std::string_view canonical_name;  // empty => UNKNOWN
};

// byte -> instruction, for all 256 byte values. Numbered families
// (PUSH1..PUSH32, DUP1..16, SWAP1..16, LOG0..4) share one canonical name.
const std::array<InstructionInfo, 256>& instruction_table();

// The fixed, ordered feature vocabulary (72 canonical mnemonics).
const std::vector<std::string>& canonical_vocabulary();

// Index of a canonical name in the vocabulary, or kUnknown.
int vocabulary_index(std::string_view canonical_name);

// Canonical index for a raw byte (kUnknown for out-of-vocabulary bytes).
int canonical_index(std::uint8_t byte);

// Name for an index, "UNKNOWN" for kUnknown.
std::string_view canonical_name(int index);

}  // namespace evmscan
