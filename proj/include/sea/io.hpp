// Copyright 2026 The SEA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sea {

/// Whole-file read; Error(Io) when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temp file and rename, so readers never observe a
/// partial file. Creates missing parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

std::string base64_encode(std::string_view data);

}  // namespace sea
