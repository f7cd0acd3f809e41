//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/algorithms.hpp"

#include "kmm/errors.hpp"
#include "kmm/oracle.hpp"

#include <string>
#include <vector>

namespace kmm {

namespace {

void require_unsigned(const BigInt& v, unsigned width, const char* what) {
  if (!fits_unsigned(v, width)) {
    throw WidthViolation(std::string(what) + " does not fit its " + std::to_string(width) +
                         "-bit accounting width");
  }
}

void require_signed(const BigInt& v, unsigned width, const char* what) {
  if (!fits_signed(v, width)) {
    throw WidthViolation(std::string(what) + " does not fit its signed " +
                         std::to_string(width) + "-bit accounting width");
  }
}

void check_operand(const BigInt& v, unsigned w, const char* name) {
  if (!fits_unsigned(v, w)) {
    throw RangeError(std::string("operand ") + name + " does not fit in " + std::to_string(w) +
                     " bits");
  }
}

void check_shapes(const UMatrix& a, const UMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("inner dimensions differ: A has " + std::to_string(a.cols()) +
                         " columns, B has " + std::to_string(b.rows()) + " rows");
  }
}

BigInt low_bits(const BigInt& v, unsigned bits) { return v & ((BigInt(1) << bits) - 1); }

DigitParams child(const DigitParams& p, unsigned w) {
  DigitParams c = p;
  c.n = p.n / 2;
  c.w = w;
  return c;
}

BigInt sm_impl(const BigInt& a, const BigInt& b, unsigned n, unsigned w, OpCounter& ops) {
  if (n == 1) {
    ops.mult(w);
    return a * b;
  }
  const unsigned h = ceil_half(w);
  const unsigned f = floor_half(w);
  const BigInt a1 = a >> h, a0 = low_bits(a, h);
  const BigInt b1 = b >> h, b0 = low_bits(b, h);

  const BigInt c1 = sm_impl(a1, b1, n / 2, f, ops);
  const BigInt c10 = sm_impl(a1, b0, n / 2, h, ops);
  const BigInt c01 = sm_impl(a0, b1, n / 2, h, ops);
  const BigInt c0 = sm_impl(a0, b0, n / 2, h, ops);

  require_unsigned(c10, w, "sm cross term");
  require_unsigned(c01, w, "sm cross term");
  ops.add(w);
  const BigInt mid = c10 + c01;

  ops.shift(2 * h);
  ops.shift(h);
  const BigInt hi = c1 << (2 * h);
  const BigInt md = mid << h;
  require_unsigned(hi, 2 * w, "sm high term");
  require_unsigned(md, 2 * w, "sm middle term");
  ops.add(2 * w);
  BigInt c = hi + md;
  require_unsigned(c, 2 * w, "sm partial sum");
  ops.add(2 * w);
  c += c0;
  require_unsigned(c, 2 * w, "sm product");
  return c;
}

BigInt ksm_impl(const BigInt& a, const BigInt& b, unsigned n, unsigned w, KsmTail tail,
                OpCounter& ops) {
  if (n == 1) {
    ops.mult(w);
    return a * b;
  }
  const unsigned h = ceil_half(w);
  const unsigned f = floor_half(w);
  const BigInt a1 = a >> h, a0 = low_bits(a, h);
  const BigInt b1 = b >> h, b0 = low_bits(b, h);

  ops.add(h, 2);
  const BigInt as = a1 + a0;
  const BigInt bs = b1 + b0;

  const BigInt c1 = ksm_impl(a1, b1, n / 2, f, tail, ops);
  const BigInt cs = ksm_impl(as, bs, n / 2, h + 1, tail, ops);
  const BigInt c0 = ksm_impl(a0, b0, n / 2, h, tail, ops);

  const unsigned mid_w = 2 * h + 4;
  require_signed(cs, mid_w, "ksm digit-sum product");
  require_signed(c1, mid_w, "ksm high product");
  require_signed(c0, mid_w, "ksm low product");
  ops.add(mid_w, 2);
  BigInt mid = cs - c1;
  require_signed(mid, mid_w, "ksm middle pre-sum");
  mid -= c0;
  require_signed(mid, mid_w, "ksm middle term");

  ops.shift(2 * h);
  ops.shift(h);
  const BigInt hi = c1 << (2 * h);
  const BigInt md = mid << h;
  require_unsigned(hi, 2 * w, "ksm high term");
  require_unsigned(md, 2 * w, "ksm middle term");
  ops.add(2 * w, tail == KsmTail::Added ? 2 : 1);
  BigInt c = hi + md;
  require_unsigned(c, 2 * w, "ksm partial sum");
  c += c0;
  require_unsigned(c, 2 * w, "ksm product");
  return c;
}

}  // namespace

void validate(const DigitParams& params) {
  if (params.n == 0 || (params.n & (params.n - 1)) != 0) {
    throw ConfigError("digit count n=" + std::to_string(params.n) + " is not a power of two");
  }
  if (params.w < params.n) {
    throw ConfigError("width w=" + std::to_string(params.w) + " is smaller than digit count n=" +
                      std::to_string(params.n));
  }
  if (params.p == 0) {
    throw ConfigError("group size p must be at least 1");
  }
}

ScalarResult sm_n(const BigInt& a, const BigInt& b, const DigitParams& params) {
  validate(params);
  check_operand(a, params.w, "a");
  check_operand(b, params.w, "b");
  ScalarResult r;
  r.value = sm_impl(a, b, params.n, params.w, r.counts);
  return r;
}

ScalarResult ksm_n(const BigInt& a, const BigInt& b, const DigitParams& params) {
  validate(params);
  check_operand(a, params.w, "a");
  check_operand(b, params.w, "b");
  ScalarResult r;
  r.value = ksm_impl(a, b, params.n, params.w, params.tail, r.counts);
  return r;
}

MatrixResult mm1(const UMatrix& a, const UMatrix& b, unsigned p) {
  check_shapes(a, b);
  if (p == 0) {
    throw ConfigError("group size p must be at least 1");
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const unsigned w = std::max(a.width(), b.width());
  const unsigned wa = ceil_log2(k);
  const unsigned wp = ceil_log2(p);
  const unsigned wide = 2 * w + wa;
  const unsigned narrow = 2 * w + wp;

  std::vector<BigInt> c(m * n);
  std::uint64_t narrow_adds = 0, wide_adds = 0, accums = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt acc = 0;
      if (p == 1) {
        for (std::size_t q = 0; q < k; ++q) {
          acc += a.at(i, q) * b.at(q, j);
          ++accums;
        }
      } else {
        for (std::size_t k0 = 0; k0 < k; k0 += p) {
          const std::size_t k1 = std::min<std::size_t>(k, k0 + p);
          BigInt x = a.at(i, k0) * b.at(k0, j);
          for (std::size_t q = k0 + 1; q < k1; ++q) {
            x += a.at(i, q) * b.at(q, j);
            ++narrow_adds;
          }
          require_unsigned(x, narrow, "mm1 group pre-sum");
          acc += x;
          ++wide_adds;
        }
      }
      require_unsigned(acc, wide, "mm1 accumulator");
      c[i * n + j] = std::move(acc);
    }
  }
  MatrixResult r{UMatrix(m, n, product_width(w, w, k), std::move(c)), {}};
  r.counts.mult(w, m * n * k);
  r.counts.add(narrow, narrow_adds);
  r.counts.add(wide, wide_adds);
  r.counts.accum(2 * w, accums);
  return r;
}

MatrixResult mm_n(const UMatrix& a_in, const UMatrix& b_in, const DigitParams& params) {
  validate(params);
  check_shapes(a_in, b_in);
  const UMatrix a = a_in.with_width(params.w);
  const UMatrix b = b_in.with_width(params.w);
  if (params.n == 1) {
    return mm1(a, b, params.p);
  }
  const unsigned w = params.w, h = ceil_half(w), f = floor_half(w);
  const UMatrix a1 = slice_high(a), a0 = slice_low(a);
  const UMatrix b1 = slice_high(b), b0 = slice_low(b);

  MatrixResult r1 = mm_n(a1, b1, child(params, f));
  MatrixResult r10 = mm_n(a1.with_width(h), b0, child(params, h));
  MatrixResult r01 = mm_n(a0, b1.with_width(h), child(params, h));
  MatrixResult r0 = mm_n(a0, b0, child(params, h));

  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const unsigned wa = ceil_log2(k);
  const unsigned wide = 2 * w + wa;
  std::vector<BigInt> c(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt& c10 = r10.value.at(i, j);
      const BigInt& c01 = r01.value.at(i, j);
      require_unsigned(c10, w + wa, "mm cross product");
      require_unsigned(c01, w + wa, "mm cross product");
      const BigInt hi = r1.value.at(i, j) << (2 * h);
      const BigInt md = (c10 + c01) << h;
      require_unsigned(hi, wide, "mm high term");
      require_unsigned(md, wide, "mm middle term");
      BigInt v = hi + md;
      require_unsigned(v, wide, "mm partial sum");
      v += r0.value.at(i, j);
      require_unsigned(v, wide, "mm product");
      c[i * n + j] = std::move(v);
    }
  }
  MatrixResult r{UMatrix(m, n, product_width(w, w, k), std::move(c)), {}};
  r.counts += r1.counts;
  r.counts += r10.counts;
  r.counts += r01.counts;
  r.counts += r0.counts;
  const std::uint64_t mn = m * n;
  r.counts.add(w + wa, mn);
  r.counts.add(wide, 2 * mn);
  r.counts.shift(2 * h, mn);
  r.counts.shift(h, mn);
  return r;
}

MatrixResult kmm_n(const UMatrix& a_in, const UMatrix& b_in, const DigitParams& params) {
  validate(params);
  check_shapes(a_in, b_in);
  const UMatrix a = a_in.with_width(params.w);
  const UMatrix b = b_in.with_width(params.w);
  if (params.n == 1) {
    return mm1(a, b, params.p);
  }
  const unsigned w = params.w, h = ceil_half(w), f = floor_half(w);
  const UMatrix a1 = slice_high(a), a0 = slice_low(a);
  const UMatrix b1 = slice_high(b), b0 = slice_low(b);
  const UMatrix as = digit_sum(a1, a0);
  const UMatrix bs = digit_sum(b1, b0);

  MatrixResult r1 = kmm_n(a1, b1, child(params, f));
  MatrixResult rs = kmm_n(as, bs, child(params, h + 1));
  MatrixResult r0 = kmm_n(a0, b0, child(params, h));

  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const unsigned wa = ceil_log2(k);
  const unsigned wide = 2 * w + wa;
  const unsigned mid_w = 2 * h + 4 + wa;
  std::vector<BigInt> c(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt& c1 = r1.value.at(i, j);
      const BigInt& cs = rs.value.at(i, j);
      const BigInt& c0 = r0.value.at(i, j);
      require_signed(cs, mid_w, "kmm digit-sum product");
      require_signed(c1, mid_w, "kmm high product");
      require_signed(c0, mid_w, "kmm low product");
      BigInt mid = cs - c1;
      require_signed(mid, mid_w, "kmm middle pre-sum");
      mid -= c0;
      require_signed(mid, mid_w, "kmm middle term");
      const BigInt hi = c1 << (2 * h);
      const BigInt md = mid << h;
      require_unsigned(hi, wide, "kmm high term");
      require_unsigned(md, wide, "kmm middle term");
      BigInt v = hi + md;
      require_unsigned(v, wide, "kmm partial sum");
      v += c0;
      require_unsigned(v, wide, "kmm product");
      c[i * n + j] = std::move(v);
    }
  }
  MatrixResult r{UMatrix(m, n, product_width(w, w, k), std::move(c)), {}};
  r.counts += r1.counts;
  r.counts += rs.counts;
  r.counts += r0.counts;
  const std::uint64_t mn = m * n;
  r.counts.add(h, m * k + k * n);
  r.counts.add(mid_w, 2 * mn);
  r.counts.add(wide, 2 * mn);
  r.counts.shift(2 * h, mn);
  r.counts.shift(h, mn);
  return r;
}

MatrixResult ksmm_n(const UMatrix& a_in, const UMatrix& b_in, const DigitParams& params) {
  validate(params);
  check_shapes(a_in, b_in);
  const UMatrix a = a_in.with_width(params.w);
  const UMatrix b = b_in.with_width(params.w);
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  const unsigned w = params.w;
  const unsigned wide = 2 * w + ceil_log2(k);

  OpCounter ops;
  std::vector<BigInt> c(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (std::size_t q = 0; q < k; ++q) {
        acc += ksm_impl(a.at(i, q), b.at(q, j), params.n, w, params.tail, ops);
      }
      require_unsigned(acc, wide, "ksmm accumulator");
      c[i * n + j] = std::move(acc);
    }
  }
  ops.accum(2 * w, m * n * k);
  return {UMatrix(m, n, product_width(w, w, k), std::move(c)), std::move(ops)};
}

}  // namespace kmm
