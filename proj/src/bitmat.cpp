//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/bitmat.hpp"

#include "kmm/errors.hpp"

#include <random>
#include <string>

namespace kmm {

namespace mp = boost::multiprecision;

unsigned bit_length(const BigInt& v) {
  if (v == 0) {
    return 0;
  }
  return static_cast<unsigned>(mp::msb(mp::abs(v))) + 1;
}

bool fits_unsigned(const BigInt& v, unsigned width) {
  return v >= 0 && bit_length(v) <= width;
}

bool fits_signed(const BigInt& v, unsigned width) {
  if (width == 0) {
    return v == 0;
  }
  if (v >= 0) {
    return bit_length(v) <= width - 1;
  }
  // -2^(w-1) is the most negative representable value.
  BigInt magnitude = -v - 1;
  return bit_length(magnitude) <= width - 1;
}

unsigned ceil_log2(std::uint64_t x) {
  unsigned r = 0;
  while (r < 64 && (std::uint64_t{1} << r) < x) {
    ++r;
  }
  return r;
}

UMatrix::UMatrix(std::size_t rows, std::size_t cols, unsigned width)
    : rows_(rows), cols_(cols), width_(width), elems_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  if (width == 0) {
    throw RangeError("matrix element width must be at least 1 bit");
  }
}

UMatrix::UMatrix(std::size_t rows, std::size_t cols, unsigned width, std::vector<BigInt> elems)
    : rows_(rows), cols_(cols), width_(width), elems_(std::move(elems)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  if (width == 0) {
    throw RangeError("matrix element width must be at least 1 bit");
  }
  if (elems_.size() != rows * cols) {
    throw DimensionError("element count " + std::to_string(elems_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (!fits_unsigned(elems_[i], width)) {
      throw RangeError("element (" + std::to_string(i / cols) + "," + std::to_string(i % cols) +
                       ") does not fit in " + std::to_string(width) + " bits");
    }
  }
}

UMatrix UMatrix::identity(std::size_t n, unsigned width) {
  std::vector<BigInt> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = 1;
  }
  return UMatrix(n, n, width, std::move(e));
}

UMatrix UMatrix::with_width(unsigned width) const {
  return UMatrix(rows_, cols_, width, elems_);
}

unsigned UMatrix::required_width() const {
  unsigned w = 1;
  for (const auto& e : elems_) {
    w = std::max(w, bit_length(e));
  }
  return w;
}

bool operator==(const UMatrix& a, const UMatrix& b) {
  return a.width_ == b.width_ && matrices_equal(a, b);
}

UMatrix bit_slice(const UMatrix& a, unsigned top, unsigned low) {
  if (top <= low) {
    throw InvalidSplitError("bit slice [" + std::to_string(top) + ":" + std::to_string(low) +
                            ") is empty");
  }
  const unsigned width = top - low;
  const BigInt mask = (BigInt(1) << width) - 1;
  std::vector<BigInt> out;
  out.reserve(a.rows() * a.cols());
  for (const auto& e : a.elements()) {
    out.push_back((e >> low) & mask);
  }
  return UMatrix(a.rows(), a.cols(), width, std::move(out));
}

UMatrix slice_high(const UMatrix& a) {
  if (a.width() < 2) {
    throw InvalidSplitError("cannot split a " + std::to_string(a.width()) + "-bit matrix");
  }
  return bit_slice(a, a.width(), ceil_half(a.width()));
}

UMatrix slice_low(const UMatrix& a) {
  if (a.width() < 2) {
    throw InvalidSplitError("cannot split a " + std::to_string(a.width()) + "-bit matrix");
  }
  return bit_slice(a, ceil_half(a.width()), 0);
}

UMatrix digit_sum(const UMatrix& hi, const UMatrix& lo) {
  if (hi.rows() != lo.rows() || hi.cols() != lo.cols()) {
    throw DimensionError("digit_sum operands differ in shape");
  }
  std::vector<BigInt> out;
  out.reserve(hi.rows() * hi.cols());
  auto h = hi.elements();
  auto l = lo.elements();
  for (std::size_t i = 0; i < h.size(); ++i) {
    out.push_back(h[i] + l[i]);
  }
  return UMatrix(hi.rows(), hi.cols(), std::max(hi.width(), lo.width()) + 1, std::move(out));
}

bool matrices_equal(const UMatrix& a, const UMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  auto x = a.elements();
  auto y = b.elements();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) {
      return false;
    }
  }
  return true;
}

namespace {

BigInt draw(std::mt19937_64& gen, unsigned width) {
  BigInt v = 0;
  const unsigned words = (width + 63) / 64;
  for (unsigned i = 0; i < words; ++i) {
    v |= BigInt(gen()) << (64 * i);
  }
  return v & ((BigInt(1) << width) - 1);
}

}  // namespace

UMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned width, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<BigInt> e;
  e.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    e.push_back(draw(gen, width));
  }
  return UMatrix(rows, cols, width, std::move(e));
}

BigInt random_value(unsigned width, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return draw(gen, width);
}

}  // namespace kmm
