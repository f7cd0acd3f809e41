//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/bitmat.hpp"
#include "kmm/op_counter.hpp"

namespace kmm {

/// How the final `+ c0` of a scalar Karatsuba level is accounted. When the
/// low product lands on bits the shifted terms leave empty it can be wired in
/// rather than added.
enum class KsmTail {
  Added,         // two 2w-bit adds per level
  Concatenated,  // one 2w-bit add per level; the c0 term is free
};

struct DigitParams {
  unsigned n = 1;  // digit count, a power of two
  unsigned w = 8;  // operand width in bits, w >= n
  unsigned p = 4;  // products pre-summed before each wide accumulation
  KsmTail tail = KsmTail::Added;
};

/// Throws ConfigError unless n is a power of two, w >= n and p >= 1.
void validate(const DigitParams& params);

template <class V>
struct AlgoResult {
  V value;
  OpCounter counts;
};

using ScalarResult = AlgoResult<BigInt>;
using MatrixResult = AlgoResult<UMatrix>;

// Scalar multiplies. Operands must satisfy 0 <= a, b < 2^w.

/// Schoolbook digit recursion: four half-width products per level.
ScalarResult sm_n(const BigInt& a, const BigInt& b, const DigitParams& params);
/// Karatsuba digit recursion: three products per level at widths
/// floor(w/2), ceil(w/2)+1 and ceil(w/2).
ScalarResult ksm_n(const BigInt& a, const BigInt& b, const DigitParams& params);

// Matrix multiplies. A is M x K, B is K x N; every element must fit `w`
// bits. Results carry width 2w + ceil(log2 K).

/// Conventional product with every `p` products summed on a narrow adder
/// before the wide accumulation. A short final group is still flushed.
MatrixResult mm1(const UMatrix& a, const UMatrix& b, unsigned p);
/// Four half-width sub-products per level; the n = 1 base is mm1.
MatrixResult mm_n(const UMatrix& a, const UMatrix& b, const DigitParams& params);
/// Three sub-products per level on the high, digit-sum and low slices;
/// the n = 1 base is mm1.
MatrixResult kmm_n(const UMatrix& a, const UMatrix& b, const DigitParams& params);
/// Conventional product whose element multiplies each run ksm_n.
MatrixResult ksmm_n(const UMatrix& a, const UMatrix& b, const DigitParams& params);

}  // namespace kmm
