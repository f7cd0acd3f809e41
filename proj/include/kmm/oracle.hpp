//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/bitmat.hpp"

namespace kmm {

/// Declared width of an M x K by K x N product of a_width and b_width inputs:
/// a_width + b_width + ceil(log2 K).
unsigned product_width(unsigned a_width, unsigned b_width, std::size_t k);

/// Triple-loop reference product in arbitrary precision. Serial.
UMatrix naive_matmul(const UMatrix& a, const UMatrix& b);

/// Same contract as naive_matmul. Uses machine words and an OpenMP row loop
/// when both input widths are <= 64 and the product width is <= 126; falls
/// back to naive_matmul otherwise.
UMatrix naive_matmul_parallel(const UMatrix& a, const UMatrix& b);

}  // namespace kmm
