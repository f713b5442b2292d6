// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/error.hpp"

namespace sea {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidCapacity: return "invalid-capacity";
    case ErrorCode::Boundary: return "boundary";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Io: return "io";
    case ErrorCode::Network: return "network";
    case ErrorCode::Extraction: return "extraction";
    case ErrorCode::Alignment: return "alignment";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace sea
