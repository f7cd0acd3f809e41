//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kmm {

/// Arbitrary-precision integer used for every matrix element and scalar
/// operand. Unsigned quantities are non-negative by invariant; signed
/// intermediates (e.g. the Karatsuba middle term) use the same type.
using BigInt = boost::multiprecision::cpp_int;

/// Number of significant bits in |v|; 0 for zero.
unsigned bit_length(const BigInt& v);

/// 0 <= v < 2^width.
bool fits_unsigned(const BigInt& v, unsigned width);

/// -2^(width-1) <= v < 2^(width-1). A zero width only admits zero.
bool fits_signed(const BigInt& v, unsigned width);

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
unsigned ceil_log2(std::uint64_t x);

inline unsigned floor_half(unsigned w) { return w / 2; }
inline unsigned ceil_half(unsigned w) { return (w + 1) / 2; }

/// Dense row-major matrix of unsigned integers with a declared element width.
///
/// The width is a checked invariant, not a storage format: every element e
/// satisfies 0 <= e < 2^width. Values are immutable once constructed; all
/// transformations return new matrices.
class UMatrix {
 public:
  /// Zero matrix.
  UMatrix(std::size_t rows, std::size_t cols, unsigned width);

  /// Takes ownership of `elems` (row-major, rows*cols entries). Throws
  /// RangeError if any element is negative or does not fit `width`.
  UMatrix(std::size_t rows, std::size_t cols, unsigned width, std::vector<BigInt> elems);

  static UMatrix identity(std::size_t n, unsigned width);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned width() const { return width_; }

  const BigInt& at(std::size_t i, std::size_t j) const { return elems_[i * cols_ + j]; }
  std::span<const BigInt> elements() const { return elems_; }

  /// Same values under a different declared width; throws RangeError when a
  /// value does not fit the new width.
  UMatrix with_width(unsigned width) const;

  /// Smallest width that holds every element (at least 1).
  unsigned required_width() const;

  friend bool operator==(const UMatrix& a, const UMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned width_;
  std::vector<BigInt> elems_;
};

/// Bits [top-1 : low] of every element; result width is top - low.
UMatrix bit_slice(const UMatrix& a, unsigned top, unsigned low);

/// Upper floor(w/2) bits of each element.
UMatrix slice_high(const UMatrix& a);

/// Lower ceil(w/2) bits of each element.
UMatrix slice_low(const UMatrix& a);

/// Element-wise hi + lo at width lo.width + 1.
UMatrix digit_sum(const UMatrix& hi, const UMatrix& lo);

/// Exact value equality; declared widths are ignored.
bool matrices_equal(const UMatrix& a, const UMatrix& b);

/// Deterministic fill from std::mt19937_64 seeded with `seed`. Each element
/// consumes ceil(width/64) draws, concatenated little-end first, then masked
/// to `width` bits.
UMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned width, std::uint64_t seed);

/// A single uniformly distributed value below 2^width from the same stream
/// layout as random_matrix.
BigInt random_value(unsigned width, std::uint64_t seed);

}  // namespace kmm
