// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/opcodes.hpp"

#include <unordered_map>

namespace evmscan {

// Mirrors data/evm_opcodes.csv row for row; the conformance test holds the
// two in lockstep.
const std::array<InstructionInfo, 256>& instruction_table() {
    static const std::array<InstructionInfo, 256> table = {{
    {"STOP", 0, "STOP"},  // 0x00
    {"ADD", 0, "ADD"},
    {"MUL", 0, "MUL"},
    {"SUB", 0, "SUB"},
    {"DIV", 0, "DIV"},
    {"SDIV", 0, "SDIV"},
    {"MOD", 0, "MOD"},
    {"SMOD", 0, "SMOD"},
    {"ADDMOD", 0, "ADDMOD"},
    {"MULMOD", 0, "MULMOD"},
    {"EXP", 0, "EXP"},
    {"SIGNEXTEND", 0, "SIGNEXTEND"},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"LT", 0, "LT"},  // 0x10
    {"GT", 0, "GT"},
    {"SLT", 0, "SLT"},
    {"SGT", 0, "SGT"},
    {"EQ", 0, "EQ"},
    {"ISZERO", 0, "ISZERO"},
    {"AND", 0, "AND"},
    {"OR", 0, "OR"},
    {"XOR", 0, "XOR"},
    {"NOT", 0, "NOT"},
    {"BYTE", 0, "BYTE"},
    {"SHL", 0, "SHL"},
    {"SHR", 0, "SHR"},
    {"SAR", 0, "SAR"},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"KECCAK256", 0, "KECCAK256"},  // 0x20
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"ADDRESS", 0, "ADDRESS"},  // 0x30
    {"BALANCE", 0, "BALANCE"},
    {"ORIGIN", 0, "ORIGIN"},
    {"CALLER", 0, "CALLER"},
    {"CALLVALUE", 0, "CALLVALUE"},
    {"CALLDATALOAD", 0, "CALLDATALOAD"},
    {"CALLDATASIZE", 0, ""},
    {"CALLDATACOPY", 0, "CALLDATACOPY"},
    {"CODESIZE", 0, "CODESIZE"},
    {"CODECOPY", 0, "CODECOPY"},
    {"GASPRICE", 0, "GASPRICE"},
    {"EXTCODESIZE", 0, "EXTCODESIZE"},
    {"EXTCODECOPY", 0, "EXTCODECOPY"},
    {"RETURNDATASIZE", 0, ""},
    {"RETURNDATACOPY", 0, "RETURNDATACOPY"},
    {"EXTCODEHASH", 0, "EXTCODEHASH"},
    {"BLOCKHASH", 0, "BLOCKHASH"},  // 0x40
    {"COINBASE", 0, "COINBASE"},
    {"TIMESTAMP", 0, "TIMESTAMP"},
    {"NUMBER", 0, "NUMBER"},
    {"PREVRANDAO", 0, "PREVRANDAO"},
    {"GASLIMIT", 0, "GASLIMIT"},
    {"CHAINID", 0, "CHAINID"},
    {"SELFBALANCE", 0, "SELFBALANCE"},
    {"BASEFEE", 0, "BASEFEE"},
    {"BLOBHASH", 0, ""},
    {"BLOBBASEFEE", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"POP", 0, "POP"},  // 0x50
    {"MLOAD", 0, "MLOAD"},
    {"MSTORE", 0, "MSTORE"},
    {"MSTORE8", 0, ""},
    {"SLOAD", 0, "SLOAD"},
    {"SSTORE", 0, "SSTORE"},
    {"JUMP", 0, "JUMP"},
    {"JUMPI", 0, "JUMPI"},
    {"PC", 0, "PC"},
    {"MSIZE", 0, "MSIZE"},
    {"GAS", 0, "GAS"},
    {"JUMPDEST", 0, ""},
    {"TLOAD", 0, ""},
    {"TSTORE", 0, ""},
    {"MCOPY", 0, ""},
    {"PUSH0", 0, "PUSH"},
    {"PUSH1", 1, "PUSH"},  // 0x60
    {"PUSH2", 2, "PUSH"},
    {"PUSH3", 3, "PUSH"},
    {"PUSH4", 4, "PUSH"},
    {"PUSH5", 5, "PUSH"},
    {"PUSH6", 6, "PUSH"},
    {"PUSH7", 7, "PUSH"},
    {"PUSH8", 8, "PUSH"},
    {"PUSH9", 9, "PUSH"},
    {"PUSH10", 10, "PUSH"},
    {"PUSH11", 11, "PUSH"},
    {"PUSH12", 12, "PUSH"},
    {"PUSH13", 13, "PUSH"},
    {"PUSH14", 14, "PUSH"},
    {"PUSH15", 15, "PUSH"},
    {"PUSH16", 16, "PUSH"},
    {"PUSH17", 17, "PUSH"},  // 0x70
    {"PUSH18", 18, "PUSH"},
    {"PUSH19", 19, "PUSH"},
    {"PUSH20", 20, "PUSH"},
    {"PUSH21", 21, "PUSH"},
    {"PUSH22", 22, "PUSH"},
    {"PUSH23", 23, "PUSH"},
    {"PUSH24", 24, "PUSH"},
    {"PUSH25", 25, "PUSH"},
    {"PUSH26", 26, "PUSH"},
    {"PUSH27", 27, "PUSH"},
    {"PUSH28", 28, "PUSH"},
    {"PUSH29", 29, "PUSH"},
    {"PUSH30", 30, "PUSH"},
    {"PUSH31", 31, "PUSH"},
    {"PUSH32", 32, "PUSH"},
    {"DUP1", 0, "DUP"},  // 0x80
    {"DUP2", 0, "DUP"},
    {"DUP3", 0, "DUP"},
    {"DUP4", 0, "DUP"},
    {"DUP5", 0, "DUP"},
    {"DUP6", 0, "DUP"},
    {"DUP7", 0, "DUP"},
    {"DUP8", 0, "DUP"},
    {"DUP9", 0, "DUP"},
    {"DUP10", 0, "DUP"},
    {"DUP11", 0, "DUP"},
    {"DUP12", 0, "DUP"},
    {"DUP13", 0, "DUP"},
    {"DUP14", 0, "DUP"},
    {"DUP15", 0, "DUP"},
    {"DUP16", 0, "DUP"},
    {"SWAP1", 0, "SWAP"},  // 0x90
    {"SWAP2", 0, "SWAP"},
    {"SWAP3", 0, "SWAP"},
    {"SWAP4", 0, "SWAP"},
    {"SWAP5", 0, "SWAP"},
    {"SWAP6", 0, "SWAP"},
    {"SWAP7", 0, "SWAP"},
    {"SWAP8", 0, "SWAP"},
    {"SWAP9", 0, "SWAP"},
    {"SWAP10", 0, "SWAP"},
    {"SWAP11", 0, "SWAP"},
    {"SWAP12", 0, "SWAP"},
    {"SWAP13", 0, "SWAP"},
    {"SWAP14", 0, "SWAP"},
    {"SWAP15", 0, "SWAP"},
    {"SWAP16", 0, "SWAP"},
    {"LOG0", 0, "LOG"},  // 0xA0
    {"LOG1", 0, "LOG"},
    {"LOG2", 0, "LOG"},
    {"LOG3", 0, "LOG"},
    {"LOG4", 0, "LOG"},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},  // 0xB0
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},  // 0xC0
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},  // 0xD0
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},  // 0xE0
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"CREATE", 0, "CREATE"},  // 0xF0
    {"CALL", 0, "CALL"},
    {"CALLCODE", 0, "CALLCODE"},
    {"RETURN", 0, "RETURN"},
    {"DELEGATECALL", 0, "DELEGATECALL"},
    {"CREATE2", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"STATICCALL", 0, "STATICCALL"},
    {"UNASSIGNED", 0, ""},
    {"UNASSIGNED", 0, ""},
    {"REVERT", 0, "REVERT"},
    {"INVALID", 0, ""},
    {"SELFDESTRUCT", 0, "SELFDESTRUCT"},
    }};
    return table;
}

// Feature vocabulary in the order the instruction families are usually
// tabulated: environment/state opcodes first, then comparison/bitwise,
// calls, collapsed families, and arithmetic. CREATE appears once.
const std::vector<std::string>& canonical_vocabulary() {
    static const std::vector<std::string> vocab = {
        "SELFBALANCE", "BASEFEE", "MLOAD", "MSTORE",
        "SLOAD", "SSTORE", "JUMP", "JUMPI",
        "PC", "MSIZE", "GAS", "RETURNDATACOPY",
        "EXTCODEHASH", "BLOCKHASH", "COINBASE", "TIMESTAMP",
        "NUMBER", "PREVRANDAO", "GASLIMIT", "CHAINID",
        "BALANCE", "ORIGIN", "CALLER", "CALLVALUE",
        "CALLDATALOAD", "CALLDATACOPY", "CODESIZE", "CODECOPY",
        "GASPRICE", "EXTCODESIZE", "EXTCODECOPY", "SLT",
        "SGT", "EQ", "ISZERO", "AND",
        "OR", "XOR", "NOT", "BYTE",
        "SHL", "SHR", "SAR", "KECCAK256",
        "ADDRESS", "CALLCODE", "RETURN", "DELEGATECALL",
        "CREATE", "STATICCALL", "REVERT", "SELFDESTRUCT",
        "LOG", "SWAP", "DUP", "PUSH",
        "POP", "STOP", "ADD", "MUL",
        "SUB", "CALL", "DIV", "SDIV",
        "MOD", "SMOD", "ADDMOD", "MULMOD",
        "EXP", "SIGNEXTEND", "LT", "GT",
    };
    return vocab;
}

namespace {

const std::unordered_map<std::string_view, int>& name_index() {
    static const std::unordered_map<std::string_view, int> index = [] {
        std::unordered_map<std::string_view, int> m;
        const auto& vocab = canonical_vocabulary();
        for (int i = 0; i < static_cast<int>(vocab.size()); ++i) m.emplace(vocab[i], i);
        return m;
    }();
    return index;
}

}  // namespace

int vocabulary_index(std::string_view name) {
    auto it = name_index().find(name);
    return it == name_index().end() ? kUnknown : it->second;
}

int canonical_index(std::uint8_t byte) {
    static const std::array<int, 256> lookup = [] {
        std::array<int, 256> m{};
        for (int b = 0; b < 256; ++b) m[b] = vocabulary_index(instruction_table()[b].canonical_name);
        return m;
    }();
    return lookup[byte];
}

std::string_view canonical_name(int index) {
    if (index == kUnknown) return "UNKNOWN";
    return canonical_vocabulary().at(static_cast<std::size_t>(index));
}

}  // namespace evmscan
