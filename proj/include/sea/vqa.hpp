// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

namespace sea {

enum class ParseStatus { Ok, Repaired, Failed };

const char* to_string(ParseStatus status);
/// Inverse of to_string; Error(Parse) for anything else.
ParseStatus parse_status_from_string(const std::string& s);

/// Element presence as judged by a vision-language model for one sketch.
struct VqaResult {
  std::string sketch_id;
  std::map<std::string, bool> presence;  // element id -> present
  std::string raw_response;
  ParseStatus parse_status = ParseStatus::Ok;

  bool operator==(const VqaResult&) const = default;
};

}  // namespace sea
