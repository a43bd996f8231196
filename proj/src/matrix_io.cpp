// Copyright (c) 2026 The stabpair developers
// SPDX-License-Identifier: Apache-2.0

#include "stabpair/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace stabpair {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (const char c : line) {
    if (c == '%') {
      return true;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;  // blank
}

[[noreturn]] void fail(const std::string& source, long line,
                       const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  throw MatrixIoError(os.str());
}

}  // namespace

Matrix read_matrix(std::istream& in, const std::string& source) {
  std::string line;
  long line_no = 0;

  Index rows = -1;
  Index cols = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) {
      continue;
    }
    std::istringstream header(line);
    if (!(header >> rows >> cols) || rows < 0 || cols < 0) {
      fail(source, line_no, "expected header line 'rows cols'");
    }
    std::string extra;
    if (header >> extra) {
      fail(source, line_no, "unexpected token '" + extra + "' after header");
    }
    break;
  }
  if (rows < 0) {
    fail(source, std::max(line_no, 1L), "missing header line 'rows cols'");
  }

  Matrix M(rows, cols);
  Index row = 0;
  while (row < rows && std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) {
      continue;
    }
    std::istringstream values(line);
    for (Index j = 0; j < cols; ++j) {
      if (!(values >> M(row, j))) {
        std::ostringstream os;
        os << "expected " << cols << " numeric entries in row " << (row + 1)
           << ", failed at column " << (j + 1);
        fail(source, line_no, os.str());
      }
    }
    std::string extra;
    if (values >> extra) {
      std::ostringstream os;
      os << "row " << (row + 1) << " has more than " << cols << " entries";
      fail(source, line_no, os.str());
    }
    ++row;
  }
  if (row < rows) {
    std::ostringstream os;
    os << "matrix ends after " << row << " of " << rows << " rows";
    fail(source, line_no + 1, os.str());
  }
  return M;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw MatrixIoError(path + ":0: cannot open file for reading");
  }
  return read_matrix(in, path);
}

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << " " << M.cols() << "\n";
  out << std::setprecision(17);
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      out << M(i, j) << (j + 1 < M.cols() ? " " : "");
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) {
    throw MatrixIoError(path + ":0: cannot open file for writing");
  }
  write_matrix(out, M);
  out.flush();
  if (!out) {
    throw MatrixIoError(path + ":0: write failed");
  }
}

}  // namespace stabpair
