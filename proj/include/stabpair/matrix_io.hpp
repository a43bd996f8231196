// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "stabpair/types.hpp"

namespace stabpair {

/// Parse/format failure; the message carries "<source>:<line>:".
struct MatrixIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text matrix format: the first content line holds "rows cols", followed by
/// one line of whitespace-separated decimal entries per row. Lines whose
/// first non-blank character is '%' are comments. Values are written with 17
/// significant digits, so a write/read round trip is bit-exact.
Matrix read_matrix(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix_file(const std::string& path, const Matrix& M);

}  // namespace stabpair
