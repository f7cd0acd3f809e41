//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/bitmat.hpp"
#include "kmm/errors.hpp"
#include "kmm/matrix_io.hpp"
#include "kmm/op_counter.hpp"
#include "kmm/oracle.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace kmm {
namespace {

UMatrix scalar(unsigned w, BigInt v) { return UMatrix(1, 1, w, {std::move(v)}); }

TEST(Slice, HighOfAE) {
  auto h = slice_high(scalar(8, 0xAE));
  EXPECT_EQ(h.at(0, 0), 0xA);
  EXPECT_EQ(h.width(), 4u);
}

TEST(Slice, LowOfAE) {
  auto l = slice_low(scalar(8, 0xAE));
  EXPECT_EQ(l.at(0, 0), 0xE);
  EXPECT_EQ(l.width(), 4u);
}

TEST(Slice, Zero) {
  EXPECT_EQ(slice_high(scalar(8, 0)).at(0, 0), 0);
  EXPECT_EQ(slice_low(scalar(8, 0)).at(0, 0), 0);
}

TEST(Slice, AllOnes2x2) {
  UMatrix a(2, 2, 8, {0xFF, 0xFF, 0xFF, 0xFF});
  auto h = slice_high(a);
  for (const auto& e : h.elements()) {
    EXPECT_EQ(e, 0xF);
  }
}

TEST(Slice, OddWidthLowGetsCeilHalf) {
  auto a = scalar(9, 0x1F3);
  auto l = slice_low(a);
  auto h = slice_high(a);
  EXPECT_EQ(l.at(0, 0), 0x13);
  EXPECT_EQ(l.width(), 5u);
  EXPECT_EQ(h.at(0, 0), 0xF);
  EXPECT_EQ(h.width(), 4u);
}

TEST(Slice, RejectsOneBit) {
  EXPECT_THROW(slice_high(scalar(1, 1)), InvalidSplitError);
  EXPECT_THROW(slice_low(scalar(1, 0)), InvalidSplitError);
}

TEST(Slice, RoundTripAllWidths) {
  for (unsigned w = 2; w <= 128; ++w) {
    auto a = random_matrix(3, 5, w, 77 + w);
    auto h = slice_high(a);
    auto l = slice_low(a);
    ASSERT_EQ(h.width() + l.width(), w);
    for (std::size_t i = 0; i < a.elements().size(); ++i) {
      BigInt back = (h.elements()[i] << ceil_half(w)) | l.elements()[i];
      ASSERT_EQ(back, a.elements()[i]) << "w=" << w << " i=" << i;
    }
  }
}

TEST(DigitSum, From0x12) {
  auto a = scalar(8, 0x12);
  auto s = digit_sum(slice_high(a), slice_low(a));
  EXPECT_EQ(s.at(0, 0), 0x3);
  EXPECT_EQ(s.width(), 5u);
}

TEST(DigitSum, ZeroHighIsZeroExtendedLow) {
  auto lo = random_matrix(3, 3, 4, 9);
  auto s = digit_sum(UMatrix(3, 3, 4), lo);
  EXPECT_TRUE(matrices_equal(s, lo));
  EXPECT_EQ(s.width(), 5u);
}

TEST(DigitSum, MaxDigits) {
  auto a = scalar(8, 0xFF);
  auto s = digit_sum(slice_high(a), slice_low(a));
  EXPECT_EQ(s.at(0, 0), 0x1E);
}

TEST(DigitSum, AlwaysFits) {
  for (unsigned w = 2; w <= 70; ++w) {
    auto a = random_matrix(4, 4, w, w);
    // all-ones is the worst case
    UMatrix ones(4, 4, w, std::vector<BigInt>(16, (BigInt(1) << w) - 1));
    for (const auto& m : {a, ones}) {
      auto lo = slice_low(m);
      auto s = digit_sum(slice_high(m), lo);
      EXPECT_EQ(s.width(), lo.width() + 1);
      for (const auto& e : s.elements()) {
        EXPECT_TRUE(fits_unsigned(e, lo.width() + 1));
      }
    }
  }
}

TEST(DigitSum, ShapeMismatch) {
  EXPECT_THROW(digit_sum(UMatrix(2, 2, 4), UMatrix(2, 3, 4)), DimensionError);
}

TEST(UMatrixTest, RejectsOutOfRange) {
  EXPECT_THROW(UMatrix(1, 1, 4, {16}), RangeError);
  EXPECT_THROW(UMatrix(1, 1, 4, {-1}), RangeError);
  EXPECT_THROW(UMatrix(1, 2, 4, {1}), DimensionError);
  EXPECT_THROW(UMatrix(0, 2, 4), DimensionError);
}

TEST(UMatrixTest, WithWidth) {
  auto a = scalar(8, 0x12);
  EXPECT_EQ(a.with_width(5).width(), 5u);
  EXPECT_THROW(a.with_width(4), RangeError);
  EXPECT_EQ(a.required_width(), 5u);
}

TEST(UMatrixTest, EqualityIgnoresWidthOnlyInMatricesEqual) {
  auto a = scalar(8, 3);
  auto b = scalar(9, 3);
  EXPECT_TRUE(matrices_equal(a, b));
  EXPECT_FALSE(a == b);
  EXPECT_TRUE(matrices_equal(a, a));
}

TEST(Random, Deterministic) {
  EXPECT_EQ(random_matrix(4, 4, 8, 1), random_matrix(4, 4, 8, 1));
  EXPECT_FALSE(matrices_equal(random_matrix(4, 4, 8, 1), random_matrix(4, 4, 8, 2)));
  auto wide = random_matrix(8, 8, 130, 5);
  EXPECT_GT(wide.required_width(), 64u);
}

TEST(Widths, SignedFit) {
  EXPECT_TRUE(fits_signed(-8, 4));
  EXPECT_FALSE(fits_signed(-9, 4));
  EXPECT_TRUE(fits_signed(7, 4));
  EXPECT_FALSE(fits_signed(8, 4));
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(64), 6u);
  EXPECT_EQ(ceil_log2(65), 7u);
}

OpCounter sample(unsigned salt) {
  OpCounter c;
  c.mult(8, 3 + salt);
  c.add(16, 2);
  c.add(9 + salt, 1);
  c.accum(16, salt);
  c.shift(4, 2);
  return c;
}

TEST(Counter, MergeIdentity) {
  auto a = sample(1);
  EXPECT_EQ(counter_merge(a, OpCounter{}), a);
  EXPECT_EQ(counter_merge(OpCounter{}, a), a);
}

TEST(Counter, MergeCommutativeAssociative) {
  auto a = sample(0), b = sample(1), c = sample(2);
  EXPECT_EQ(counter_merge(a, b), counter_merge(b, a));
  EXPECT_EQ(counter_merge(counter_merge(a, b), c), counter_merge(a, counter_merge(b, c)));
}

TEST(Counter, ZeroCountsNotStored) {
  OpCounter c;
  c.accum(16, 0);
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(c, OpCounter{});
}

TEST(Counter, FirstDifference) {
  OpCounter a, b;
  a.add(18, 6);
  b.add(18, 8);
  EXPECT_EQ(first_difference(a, b).value(), "adds[18]: 6 != 8");
  EXPECT_FALSE(first_difference(a, a).has_value());
}

TEST(Counter, Totals) {
  auto c = sample(1);
  EXPECT_EQ(c.total(), 4u + 2 + 1 + 1 + 2);
  EXPECT_EQ(c.total_without_shifts(), 8u);
  EXPECT_EQ(c.scaled(3).total(), 30u);
}

TEST(MatrixIo, RoundTrip) {
  auto a = random_matrix(3, 4, 37, 11);
  auto back = parse_matrix(format_matrix(a));
  EXPECT_EQ(back, a);
}

TEST(MatrixIo, ParsesHex) {
  auto m = parse_matrix("2 2 8\nff 0\n\n1 A\n");
  EXPECT_EQ(m.at(0, 0), 0xFF);
  EXPECT_EQ(m.at(1, 1), 0xA);
}

TEST(MatrixIo, Errors) {
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(parse_matrix("1 1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 1 4\n10\n"), RangeError);
  EXPECT_THROW(parse_matrix("1 2 8\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 1 8\n1\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 1 8\n1\n2\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 1 8\n0x1\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 1 8\nzz\n"), ParseError);
  EXPECT_THROW(parse_matrix("0 1 8\n"), ParseError);
}

TEST(MatrixIo, AtomicWrite) {
  auto dir = std::filesystem::temp_directory_path() / "kmm_io_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "m.txt";
  auto a = random_matrix(2, 2, 12, 3);
  write_file_atomic(path, format_matrix(a));
  EXPECT_FALSE(std::filesystem::exists(dir / "m.txt.tmp"));
  EXPECT_EQ(read_matrix_file(path), a);
  std::filesystem::remove_all(dir);
}

TEST(Oracle, ParallelMatchesSerial) {
  for (unsigned w : {1u, 8u, 31u, 60u, 64u, 65u}) {
    auto a = random_matrix(7, 9, w, w);
    auto b = random_matrix(9, 5, w, w + 100);
    auto s = naive_matmul(a, b);
    auto p = naive_matmul_parallel(a, b);
    EXPECT_EQ(s, p) << "w=" << w;
    EXPECT_EQ(s.width(), product_width(w, w, 9));
  }
  EXPECT_THROW(naive_matmul(UMatrix(2, 3, 4), UMatrix(2, 3, 4)), DimensionError);
}

}  // namespace
}  // namespace kmm
