//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/matrix_io.hpp"

#include "kmm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace kmm {

namespace {

std::size_t parse_count(const std::string& tok, const char* what) {
  if (tok.empty() || tok.size() > 9 ||
      !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError(std::string("header field '") + what + "' is not a positive integer: '" +
                     tok + "'");
  }
  return std::stoul(tok);
}

BigInt parse_hex(const std::string& tok, std::size_t line) {
  BigInt v = 0;
  for (char ch : tok) {
    int digit;
    if (ch >= '0' && ch <= '9') {
      digit = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      digit = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      digit = ch - 'A' + 10;
    } else {
      throw ParseError("line " + std::to_string(line) + ": '" + tok + "' is not a hex value");
    }
    v = (v << 4) | digit;
  }
  return v;
}

}  // namespace

UMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        return true;
      }
    }
    return false;
  };

  if (!next_line()) {
    throw ParseError("empty matrix text");
  }
  std::istringstream header(line);
  std::string r, c, w, extra;
  if (!(header >> r >> c >> w) || (header >> extra)) {
    throw ParseError("header must be 'rows cols width'");
  }
  const std::size_t rows = parse_count(r, "rows");
  const std::size_t cols = parse_count(c, "cols");
  const std::size_t width = parse_count(w, "width");
  if (rows == 0 || cols == 0 || width == 0) {
    throw ParseError("rows, cols and width must all be at least 1");
  }

  std::vector<BigInt> elems;
  elems.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_line()) {
      throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string tok;
    std::size_t n = 0;
    while (row >> tok) {
      BigInt v = parse_hex(tok, lineno);
      if (!fits_unsigned(v, static_cast<unsigned>(width))) {
        throw RangeError("line " + std::to_string(lineno) + ": value " + tok +
                         " does not fit in " + std::to_string(width) + " bits");
      }
      elems.push_back(std::move(v));
      ++n;
    }
    if (n != cols) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                       " values, found " + std::to_string(n));
    }
  }
  if (next_line()) {
    throw ParseError("line " + std::to_string(lineno) + ": trailing data after last row");
  }
  return UMatrix(rows, cols, static_cast<unsigned>(width), std::move(elems));
}

std::string format_matrix(const UMatrix& m) {
  std::ostringstream os;
  os << m.rows() << " " << m.cols() << " " << m.width() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) {
        os << " ";
      }
      os << std::hex << std::nouppercase << m.at(i, j) << std::dec;
    }
    os << "\n";
  }
  return os.str();
}

UMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open matrix file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open " + tmp.string() + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
      throw Error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kmm
