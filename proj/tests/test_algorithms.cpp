//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/algorithms.hpp"
#include "kmm/complexity.hpp"
#include "kmm/errors.hpp"
#include "kmm/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kmm {
namespace {

DigitParams params(unsigned n, unsigned w, unsigned p = 4, KsmTail tail = KsmTail::Added) {
  return DigitParams{n, w, p, tail};
}

UMatrix scalar(unsigned w, BigInt v) { return UMatrix(1, 1, w, {std::move(v)}); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

unsigned log2u(unsigned n) {
  unsigned r = 0;
  while ((1u << r) < n) ++r;
  return r;
}

TEST(Scalar, SmHexExample) {
  EXPECT_EQ(sm_n(0x12, 0x10, params(2, 8)).value, 0x120);
  EXPECT_EQ(sm_n(0xFF, 0xFF, params(2, 8)).value, 0xFE01);
  EXPECT_EQ(sm_n(0, 0xAB, params(2, 8)).value, 0);
}

TEST(Scalar, KsmHexExample) {
  auto r = ksm_n(0x12, 0x10, params(2, 8));
  EXPECT_EQ(r.value, 0x120);
  EXPECT_EQ(r.counts.total_mults(), 3u);
}

TEST(Scalar, KsmZeroStillCountsThree) {
  auto r = ksm_n(0, 0, params(2, 8));
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.counts.total_mults(), 3u);
}

TEST(Scalar, KsmNineMultsAtFourDigits) {
  auto r = ksm_n(0xBEEF, 0xCAFE, params(4, 16));
  EXPECT_EQ(r.value, BigInt(0xBEEF) * 0xCAFE);
  EXPECT_EQ(r.counts.total_mults(), 9u);
}

TEST(Scalar, RangeError) {
  EXPECT_THROW(sm_n(0x100, 1, params(2, 8)), RangeError);
  EXPECT_THROW(ksm_n(1, 0x100, params(2, 8)), RangeError);
}

TEST(Scalar, BadParams) {
  EXPECT_THROW(sm_n(1, 1, params(3, 8)), ConfigError);
  EXPECT_THROW(ksm_n(1, 1, params(16, 8)), ConfigError);
  EXPECT_THROW(mm1(UMatrix(1, 1, 4), UMatrix(1, 1, 4), 0), ConfigError);
}

TEST(Scalar, ExhaustiveSmallWidths) {
  for (unsigned w = 2; w <= 6; ++w) {
    for (unsigned n : {1u, 2u, 4u}) {
      if (n > w) continue;
      for (unsigned a = 0; a < (1u << w); ++a) {
        for (unsigned b = 0; b < (1u << w); ++b) {
          ASSERT_EQ(sm_n(a, b, params(n, w)).value, a * b) << w << " " << n;
          ASSERT_EQ(ksm_n(a, b, params(n, w)).value, a * b) << w << " " << n;
          ASSERT_EQ(ksm_n(a, b, params(n, w, 4, KsmTail::Concatenated)).value, a * b);
        }
      }
    }
  }
}

TEST(Matrix, Mm1Identity) {
  auto b = random_matrix(5, 5, 12, 4);
  EXPECT_TRUE(matrices_equal(mm1(UMatrix::identity(5, 12), b, 4).value, b));
}

TEST(Matrix, Mm1Scalar) {
  EXPECT_EQ(mm1(scalar(8, 0x12), scalar(8, 0x10), 4).value.at(0, 0), 0x120);
}

TEST(Matrix, Mm1GroupingK8) {
  auto a = random_matrix(1, 8, 8, 1);
  auto b = random_matrix(8, 1, 8, 2);
  auto r = mm1(a, b, 4);
  EXPECT_EQ(r.counts.mults.at(8), 8u);
  EXPECT_EQ(r.counts.adds.at(18), 6u);  // 2w + log2 p
  EXPECT_EQ(r.counts.adds.at(19), 2u);  // 2w + log2 K
  EXPECT_TRUE(r.counts.accums.empty());
}

TEST(Matrix, Mm1GroupingLaw) {
  for (std::size_t k : {8u, 12u, 32u}) {  // log2 K != log2 p keeps the keys apart
    for (unsigned p : {1u, 2u, 4u}) {
      auto a = random_matrix(1, k, 6, k);
      auto b = random_matrix(k, 1, 6, k + 1);
      auto r = mm1(a, b, p);
      if (p == 1) {
        EXPECT_EQ(r.counts.accums.at(12), k);
        continue;
      }
      std::uint64_t narrow = 0, wide = 0;
      for (const auto& [w, c] : r.counts.adds) {
        (w == 12 + ceil_log2(p) ? narrow : wide) += c;
      }
      EXPECT_EQ(narrow, (k / p) * (p - 1)) << k << " " << p;
      EXPECT_EQ(wide, k / p) << k << " " << p;
    }
  }
}

TEST(Matrix, Mm1RaggedLastGroup) {
  auto a = random_matrix(2, 7, 8, 5);
  auto b = random_matrix(7, 3, 8, 6);
  auto r = mm1(a, b, 4);
  EXPECT_TRUE(matrices_equal(r.value, naive_matmul(a, b)));
  // groups of 4 and 3 per element
  EXPECT_EQ(r.counts.adds.at(19), 2u * 6);
  EXPECT_EQ(r.counts.adds.at(18), 5u * 6);
}

TEST(Matrix, MmnOneIsMm1) {
  auto a = random_matrix(4, 4, 8, 7);
  auto b = random_matrix(4, 4, 8, 8);
  auto x = mm_n(a, b, params(1, 8));
  auto y = mm1(a, b, 4);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.counts, y.counts);
}

TEST(Matrix, Mmn2x2Wide) {
  auto a = random_matrix(2, 2, 16, 10);
  auto b = random_matrix(2, 2, 16, 11);
  EXPECT_TRUE(matrices_equal(mm_n(a, b, params(2, 16)).value, naive_matmul(a, b)));
}

TEST(Matrix, KmmScalar) {
  EXPECT_EQ(kmm_n(scalar(8, 0x12), scalar(8, 0x10), params(2, 8)).value.at(0, 0), 0x120);
}

TEST(Matrix, KmmZero) {
  auto b = random_matrix(3, 3, 16, 1);
  auto r = kmm_n(UMatrix(3, 3, 16), b, params(4, 16));
  for (const auto& e : r.value.elements()) EXPECT_EQ(e, 0);
}

TEST(Matrix, KsmmBaseMultCounts) {
  auto a = random_matrix(2, 2, 8, 1);
  auto b = random_matrix(2, 2, 8, 2);
  EXPECT_EQ(ksmm_n(a, b, params(1, 8)).counts.total_mults(),
            mm1(a, b, 4).counts.total_mults());
  EXPECT_EQ(ksmm_n(a, b, params(2, 8)).counts.total_mults(), 24u);
}

TEST(Matrix, KmmFewerBaseMults) {
  auto a = random_matrix(4, 4, 16, 3);
  auto b = random_matrix(4, 4, 16, 4);
  EXPECT_EQ(kmm_n(a, b, params(4, 16)).counts.total_mults(), 9u * 64);
  EXPECT_EQ(mm_n(a, b, params(4, 16)).counts.total_mults(), 16u * 64);
  auto c = random_matrix(4, 4, 32, 5);
  auto d = random_matrix(4, 4, 32, 6);
  EXPECT_EQ(kmm_n(c, d, params(8, 32)).counts.total_mults(), 27u * 64);
}

TEST(Matrix, Mismatch) {
  EXPECT_THROW(mm_n(UMatrix(2, 3, 8), UMatrix(2, 3, 8), params(2, 8)), DimensionError);
  EXPECT_THROW(kmm_n(UMatrix(2, 3, 8), UMatrix(2, 3, 8), params(2, 8)), DimensionError);
  EXPECT_THROW(kmm_n(scalar(8, 0x100 - 1), scalar(9, 0x100), params(2, 8)), RangeError);
}

// Random oracle sweep with the multiplication-count laws checked on the way.
struct Point {
  unsigned n, w;
  std::size_t d;
};

class OracleSweep : public ::testing::TestWithParam<Point> {};

TEST_P(OracleSweep, AllAlgorithmsMatchNaive) {
  const auto [n, w, d] = GetParam();
  const std::uint64_t sq = ipow(n, 2), ka = ipow(3, log2u(n));
  for (unsigned rep = 0; rep < 10; ++rep) {
    const std::uint64_t seed = n * 100000 + w * 1000 + d * 10 + rep;
    auto a = random_matrix(d, d, w, seed);
    auto b = random_matrix(d, d, w, seed ^ 0xabcdef);
    auto ref = naive_matmul(a, b);
    auto mm = mm_n(a, b, params(n, w));
    auto km = kmm_n(a, b, params(n, w));
    auto ks = ksmm_n(a, b, params(n, w));
    auto kc = ksmm_n(a, b, params(n, w, 4, KsmTail::Concatenated));
    ASSERT_TRUE(matrices_equal(mm.value, ref));
    ASSERT_TRUE(matrices_equal(km.value, ref));
    ASSERT_TRUE(matrices_equal(ks.value, ref));
    ASSERT_TRUE(matrices_equal(kc.value, ref));
    ASSERT_TRUE(matrices_equal(mm1(a, b, 4).value, ref));
    const std::uint64_t d3 = d * d * d;
    EXPECT_EQ(mm.counts.total_mults(), sq * d3);
    EXPECT_EQ(km.counts.total_mults(), ka * d3);
    EXPECT_EQ(ks.counts.total_mults(), ka * d3);

    auto x = a.at(0, 0), y = b.at(0, 0);
    auto s = sm_n(x, y, params(n, w));
    auto k = ksm_n(x, y, params(n, w));
    ASSERT_EQ(s.value, x * y);
    ASSERT_EQ(k.value, x * y);
    EXPECT_EQ(s.counts.total_mults(), sq);
    EXPECT_EQ(k.counts.total_mults(), ka);
  }
}

std::vector<Point> sweep_points() {
  std::vector<Point> pts;
  for (unsigned w : {4u, 8u, 9u, 16u, 32u, 64u}) {
    for (unsigned n : {1u, 2u, 4u, 8u}) {
      if (n > w) continue;
      for (std::size_t d : {1u, 3u, 8u}) pts.push_back({n, w, d});
    }
  }
  return pts;
}

INSTANTIATE_TEST_SUITE_P(Grid, OracleSweep, ::testing::ValuesIn(sweep_points()),
                         [](const auto& info) {
                           return "n" + std::to_string(info.param.n) + "_w" +
                                  std::to_string(info.param.w) + "_d" +
                                  std::to_string(info.param.d);
                         });

TEST(Matrix, NonSquare) {
  for (unsigned n : {1u, 2u, 4u}) {
    auto a = random_matrix(3, 5, 13, n);
    auto b = random_matrix(5, 2, 13, n + 9);
    auto ref = naive_matmul(a, b);
    EXPECT_TRUE(matrices_equal(mm_n(a, b, params(n, 13)).value, ref));
    EXPECT_TRUE(matrices_equal(kmm_n(a, b, params(n, 13)).value, ref));
    EXPECT_TRUE(matrices_equal(ksmm_n(a, b, params(n, 13)).value, ref));
  }
}

TEST(Matrix, WorstCaseOperandsStayInWidth) {
  // all-ones drives every pre-sum to its maximum
  for (unsigned w : {8u, 9u, 15u, 16u, 33u}) {
    for (unsigned n : {2u, 4u, 8u}) {
      const BigInt top = (BigInt(1) << w) - 1;
      UMatrix a(8, 8, w, std::vector<BigInt>(64, top));
      auto ref = naive_matmul(a, a);
      EXPECT_NO_THROW({
        EXPECT_TRUE(matrices_equal(kmm_n(a, a, params(n, w)).value, ref));
        EXPECT_TRUE(matrices_equal(mm_n(a, a, params(n, w)).value, ref));
        EXPECT_TRUE(matrices_equal(ksmm_n(a, a, params(n, w)).value, ref));
      });
    }
  }
}

TEST(Matrix, AlgebraicIdentity) {
  auto a = random_matrix(6, 6, 24, 99);
  auto b = random_matrix(6, 6, 24, 98);
  auto x = kmm_n(a, b, params(4, 24)).value;
  EXPECT_TRUE(matrices_equal(x, mm_n(a, b, params(4, 24)).value));
  EXPECT_TRUE(matrices_equal(x, ksmm_n(a, b, params(4, 24)).value));
}

}  // namespace
}  // namespace kmm
