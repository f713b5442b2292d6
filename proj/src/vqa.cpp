// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#include "sea/vqa.hpp"

#include "sea/error.hpp"

namespace sea {

const char* to_string(ParseStatus status) {
  switch (status) {
    case ParseStatus::Ok: return "ok";
    case ParseStatus::Repaired: return "repaired";
    case ParseStatus::Failed: return "failed";
  }
  return "failed";
}

ParseStatus parse_status_from_string(const std::string& s) {
  if (s == "ok") return ParseStatus::Ok;
  if (s == "repaired") return ParseStatus::Repaired;
  if (s == "failed") return ParseStatus::Failed;
  throw Error(ErrorCode::Parse, "unknown parse_status '" + s + "'");
}

}  // namespace sea
