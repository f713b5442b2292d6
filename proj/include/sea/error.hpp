// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sea {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidCapacity,
  Boundary,
  Parse,
  Validation,
  Io,
  Network,
  Extraction,
  Alignment,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception; the C API maps
/// `code()` onto a status value and keeps `what()` as the last-error text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sea
