//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/oracle.hpp"

#include "kmm/errors.hpp"

#include <vector>

namespace kmm {

namespace {

void check_shapes(const UMatrix& a, const UMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("inner dimensions differ: A is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", B is " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

std::vector<std::uint64_t> to_words(const UMatrix& m) {
  std::vector<std::uint64_t> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& e : m.elements()) {
    out.push_back(static_cast<std::uint64_t>(e));
  }
  return out;
}

BigInt from_u128(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

}  // namespace

unsigned product_width(unsigned a_width, unsigned b_width, std::size_t k) {
  return a_width + b_width + ceil_log2(k);
}

UMatrix naive_matmul(const UMatrix& a, const UMatrix& b) {
  check_shapes(a, b);
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<BigInt> c(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (std::size_t q = 0; q < k; ++q) {
        acc += a.at(i, q) * b.at(q, j);
      }
      c[i * n + j] = std::move(acc);
    }
  }
  return UMatrix(m, n, product_width(a.width(), b.width(), k), std::move(c));
}

UMatrix naive_matmul_parallel(const UMatrix& a, const UMatrix& b) {
  check_shapes(a, b);
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const unsigned out_width = product_width(a.width(), b.width(), k);
  if (a.width() > 64 || b.width() > 64 || out_width > 126) {
    return naive_matmul(a, b);
  }
  const auto aw = to_words(a);
  const auto bw = to_words(b);
  std::vector<unsigned __int128> acc(m * n, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    for (std::size_t q = 0; q < k; ++q) {
      const unsigned __int128 x = aw[i * k + q];
      for (std::size_t j = 0; j < n; ++j) {
        acc[i * n + j] += x * bw[q * n + j];
      }
    }
  }
  std::vector<BigInt> c;
  c.reserve(m * n);
  for (auto v : acc) {
    c.push_back(from_u128(v));
  }
  return UMatrix(m, n, out_width, std::move(c));
}

}  // namespace kmm
