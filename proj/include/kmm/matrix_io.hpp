//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/bitmat.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace kmm {

// Text format:
//   rows cols width
//   <rows lines of cols whitespace-separated lowercase hex values, no 0x>

/// Throws ParseError on malformed text and RangeError on values >= 2^width.
UMatrix parse_matrix(std::string_view text);
std::string format_matrix(const UMatrix& m);

UMatrix read_matrix_file(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace kmm
