//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/algorithms.hpp"
#include "kmm/op_counter.hpp"

#include <cstdint>

namespace kmm {

/// Predicted operation tally for a d x d by d x d multiply. `ops` has the
/// same keys an instrumented run records.
struct OpBreakdown {
  OpCounter ops;
  std::uint64_t total = 0;
  std::uint64_t total_without_shifts = 0;
};

OpBreakdown make_breakdown(OpCounter ops);

// All of these throw ConfigError for a digit count that is not a power of
// two or exceeds w. The width w_a added for accumulation is ceil(log2 d).

OpBreakdown complexity_mm1(unsigned w, std::uint64_t d, unsigned p);
OpBreakdown complexity_mm_n(unsigned n, unsigned w, std::uint64_t d, unsigned p = 4);
OpBreakdown complexity_ksm_n(unsigned n, unsigned w, KsmTail tail = KsmTail::Added);
OpBreakdown complexity_ksmm_n(unsigned n, unsigned w, std::uint64_t d,
                              KsmTail tail = KsmTail::Added);
OpBreakdown complexity_kmm_n(unsigned n, unsigned w, std::uint64_t d, unsigned p = 4);
/// No closed form is given for the schoolbook scalar recursion; this is its
/// operation tally derived the same way.
OpBreakdown complexity_sm_n(unsigned n, unsigned w);

enum class ArithAlgorithm { MM, KSMM, KMM };

const char* to_string(ArithAlgorithm alg);

/// Width-agnostic operation totals:
///   MM:   2 n^2 d^3 + 5 (n/2)^2 d^2
///   KSMM: (1 + 11 (n/2)^log2(3)) d^3
///   KMM:  (n/2)^log2(3) (6 d^3 + 8 d^2)
/// (n/2)^log2(3) is 3^(r-1) exactly for n = 2^r >= 2. At n = 1 the factors are
/// fractional, hence the real-valued result.
double arith_counts(ArithAlgorithm alg, unsigned n, std::uint64_t d);

}  // namespace kmm
