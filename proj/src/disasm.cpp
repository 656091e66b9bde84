// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/disasm.hpp"

#include <cctype>

#include "evmscan/error.hpp"

namespace evmscan {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::vector<std::uint8_t> decode_hex(std::string_view text) {
    std::size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (end - begin >= 2 && text[begin] == '0' && (text[begin + 1] == 'x' || text[begin + 1] == 'X'))
        begin += 2;

    const std::size_t n = end - begin;
    if (n % 2 != 0) throw Error(ErrKind::OddNibbleCount, "hex text has an odd number of digits");

    std::vector<std::uint8_t> bytes;
    bytes.reserve(n / 2);
    for (std::size_t i = begin; i < end; i += 2) {
        const int hi = hex_nibble(text[i]);
        const int lo = hex_nibble(text[i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrKind::NonHexCharacter,
                        std::string("invalid character '") + text[hi < 0 ? i : i + 1] + "' in hex text");
        }
        bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return bytes;
}

std::vector<int> disassemble(std::span<const std::uint8_t> code) {
    std::vector<int> stream;
    stream.reserve(code.size());
    std::size_t pc = 0;
    while (pc < code.size()) {
        const std::uint8_t byte = code[pc];
        stream.push_back(canonical_index(byte));
        pc += 1 + instruction_table()[byte].immediate_bytes;  // may overshoot the end
    }
    return stream;
}

std::uint64_t immediate_bytes_consumed(std::span<const std::uint8_t> code) {
    std::uint64_t consumed = 0;
    std::size_t pc = 0;
    while (pc < code.size()) {
        const std::size_t imm = instruction_table()[code[pc]].immediate_bytes;
        consumed += std::min(imm, code.size() - pc - 1);
        pc += 1 + imm;
    }
    return consumed;
}

FrequencyVector count_frequencies(std::span<const int> stream) {
    FrequencyVector fv;
    fv.counts.assign(canonical_vocabulary().size(), 0);
    for (int op : stream) {
        if (op == kUnknown) {
            ++fv.unknown;
        } else {
            ++fv.counts[static_cast<std::size_t>(op)];
            ++fv.total;
        }
    }
    return fv;
}

FrequencyVector featurize_hex(std::string_view hex_text) {
    const auto bytes = decode_hex(hex_text);
    const auto stream = disassemble(bytes);
    return count_frequencies(stream);
}

}  // namespace evmscan
