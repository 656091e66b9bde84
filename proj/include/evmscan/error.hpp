// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evmscan {

enum class ErrKind {
    // input / data errors (exit code 2)
    NonHexCharacter,
    OddNibbleCount,
    MissingLabelColumn,
    NonNumericCell,
    RaggedRow,
    EmptyDataset,
    SingleClassDataset,
    MissingFile,
    DimensionMismatch,
    LengthMismatch,
    TooFewSamples,
    EmptyInput,
    NonBinaryFeature,
    MissingFeature,
    IoError,
    // usage errors (exit code 1)
    UsageError,
    // internal errors (exit code 3)
    SingularSystem,
    Internal,
};

std::string_view to_string(ErrKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrKind kind() const noexcept { return kind_; }

    // 1 usage, 2 data, 3 internal
    int exit_code() const noexcept;

private:
    ErrKind kind_;
};

}  // namespace evmscan
