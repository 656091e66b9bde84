// evmscan: explainable malicious smart contract detector
// Copyright 2026 The evmscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "evmscan/error.hpp"

namespace evmscan {

std::string_view to_string(ErrKind kind) {
    switch (kind) {
        case ErrKind::NonHexCharacter: return "NonHexCharacter";
        case ErrKind::OddNibbleCount: return "OddNibbleCount";
        case ErrKind::MissingLabelColumn: return "MissingLabelColumn";
        case ErrKind::NonNumericCell: return "NonNumericCell";
        case ErrKind::RaggedRow: return "RaggedRow";
        case ErrKind::EmptyDataset: return "EmptyDataset";
        case ErrKind::SingleClassDataset: return "SingleClassDataset";
        case ErrKind::MissingFile: return "MissingFile";
        case ErrKind::DimensionMismatch: return "DimensionMismatch";
        case ErrKind::LengthMismatch: return "LengthMismatch";
        case ErrKind::TooFewSamples: return "TooFewSamples";
        case ErrKind::EmptyInput: return "EmptyInput";
        case ErrKind::NonBinaryFeature: return "NonBinaryFeature";
        case ErrKind::MissingFeature: return "MissingFeature";
        case ErrKind::IoError: return "IoError";
        case ErrKind::UsageError: return "UsageError";
        case ErrKind::SingularSystem: return "SingularSystem";
        case ErrKind::Internal: return "Internal";
    }
    return "Internal";
}

int Error::exit_code() const noexcept {
    switch (kind_) {
        case ErrKind::UsageError:
            return 1;
        case ErrKind::SingularSystem:
        case ErrKind::Internal:
            return 3;
        default:
            return 2;
    }
}

}  // namespace evmscan
