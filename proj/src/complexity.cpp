//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/complexity.hpp"

#include "kmm/bitmat.hpp"
#include "kmm/errors.hpp"

#include <cmath>

namespace kmm {

namespace {

void check(unsigned n, unsigned w) {
  DigitParams params;
  params.n = n;
  params.w = w;
  validate(params);
}

OpCounter mm1_ops(unsigned w, std::uint64_t d, unsigned p) {
  OpCounter c;
  const std::uint64_t d2 = d * d;
  c.mult(w, d2 * d);
  if (p == 1) {
    c.accum(2 * w, d2 * d);
  } else {
    const std::uint64_t groups = (d + p - 1) / p;
    c.add(2 * w + ceil_log2(p), d2 * (d - groups));
    c.add(2 * w + ceil_log2(d), d2 * groups);
  }
  return c;
}

OpCounter mm_ops(unsigned n, unsigned w, std::uint64_t d, unsigned p) {
  if (n == 1) {
    return mm1_ops(w, d, p);
  }
  const unsigned h = ceil_half(w);
  const unsigned wa = ceil_log2(d);
  const std::uint64_t d2 = d * d;
  OpCounter c = mm_ops(n / 2, floor_half(w), d, p);
  c += mm_ops(n / 2, h, d, p).scaled(3);
  c.add(w + wa, d2);
  c.add(2 * w + wa, 2 * d2);
  c.shift(2 * h, d2);
  c.shift(h, d2);
  return c;
}

OpCounter ksm_ops(unsigned n, unsigned w, KsmTail tail) {
  OpCounter c;
  if (n == 1) {
    c.mult(w);
    return c;
  }
  const unsigned h = ceil_half(w);
  c.add(2 * w, tail == KsmTail::Added ? 2 : 1);
  c.add(h, 2);
  c.add(2 * h + 4, 2);
  c.shift(2 * h);
  c.shift(h);
  c += ksm_ops(n / 2, floor_half(w), tail);
  c += ksm_ops(n / 2, h + 1, tail);
  c += ksm_ops(n / 2, h, tail);
  return c;
}

OpCounter kmm_ops(unsigned n, unsigned w, std::uint64_t d, unsigned p) {
  if (n == 1) {
    return mm1_ops(w, d, p);
  }
  const unsigned h = ceil_half(w);
  const unsigned wa = ceil_log2(d);
  const std::uint64_t d2 = d * d;
  OpCounter c;
  c.add(2 * h + 4 + wa, 2 * d2);
  c.add(2 * w + wa, 2 * d2);
  c.add(h, 2 * d2);
  c.shift(2 * h, d2);
  c.shift(h, d2);
  c += kmm_ops(n / 2, floor_half(w), d, p);
  c += kmm_ops(n / 2, h + 1, d, p);
  c += kmm_ops(n / 2, h, d, p);
  return c;
}

OpCounter sm_ops(unsigned n, unsigned w) {
  OpCounter c;
  if (n == 1) {
    c.mult(w);
    return c;
  }
  const unsigned h = ceil_half(w);
  c.add(w);
  c.add(2 * w, 2);
  c.shift(2 * h);
  c.shift(h);
  c += sm_ops(n / 2, floor_half(w));
  c += sm_ops(n / 2, h).scaled(3);
  return c;
}

void check_d(std::uint64_t d) {
  if (d == 0) {
    throw ConfigError("matrix dimension d must be at least 1");
  }
}

void check_p(unsigned p) {
  if (p == 0) {
    throw ConfigError("group size p must be at least 1");
  }
}

}  // namespace

OpBreakdown make_breakdown(OpCounter ops) {
  OpBreakdown b;
  b.total = ops.total();
  b.total_without_shifts = ops.total_without_shifts();
  b.ops = std::move(ops);
  return b;
}

OpBreakdown complexity_mm1(unsigned w, std::uint64_t d, unsigned p) {
  check(1, w);
  check_d(d);
  check_p(p);
  return make_breakdown(mm1_ops(w, d, p));
}

OpBreakdown complexity_mm_n(unsigned n, unsigned w, std::uint64_t d, unsigned p) {
  check(n, w);
  check_d(d);
  check_p(p);
  return make_breakdown(mm_ops(n, w, d, p));
}

OpBreakdown complexity_ksm_n(unsigned n, unsigned w, KsmTail tail) {
  check(n, w);
  return make_breakdown(ksm_ops(n, w, tail));
}

OpBreakdown complexity_ksmm_n(unsigned n, unsigned w, std::uint64_t d, KsmTail tail) {
  check(n, w);
  check_d(d);
  OpCounter per = ksm_ops(n, w, tail);
  per.accum(2 * w);
  return make_breakdown(per.scaled(d * d * d));
}

OpBreakdown complexity_kmm_n(unsigned n, unsigned w, std::uint64_t d, unsigned p) {
  check(n, w);
  check_d(d);
  check_p(p);
  return make_breakdown(kmm_ops(n, w, d, p));
}

OpBreakdown complexity_sm_n(unsigned n, unsigned w) {
  check(n, w);
  return make_breakdown(sm_ops(n, w));
}

const char* to_string(ArithAlgorithm alg) {
  switch (alg) {
    case ArithAlgorithm::MM:
      return "MM";
    case ArithAlgorithm::KSMM:
      return "KSMM";
    case ArithAlgorithm::KMM:
      return "KMM";
  }
  return "?";
}

double arith_counts(ArithAlgorithm alg, unsigned n, std::uint64_t d) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ConfigError("digit count n=" + std::to_string(n) + " is not a power of two");
  }
  const double dd = static_cast<double>(d);
  const double d2 = dd * dd;
  const double d3 = d2 * dd;
  const double half = n / 2.0;
  double three_pow;  // (n/2)^log2(3)
  if (n == 1) {
    three_pow = std::pow(0.5, std::log2(3.0));
  } else {
    three_pow = 1.0;
    for (unsigned m = n; m > 2; m /= 2) {
      three_pow *= 3.0;
    }
  }
  switch (alg) {
    case ArithAlgorithm::MM:
      return 2.0 * n * n * d3 + 5.0 * half * half * d2;
    case ArithAlgorithm::KSMM:
      return (1.0 + 11.0 * three_pow) * d3;
    case ArithAlgorithm::KMM:
      return three_pow * (6.0 * d3 + 8.0 * d2);
  }
  return 0.0;
}

}  // namespace kmm
