//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace kmm {

using WidthMap = std::map<unsigned, std::uint64_t>;

/// Operation tally keyed by operand bitwidth (shift amount for shifts).
/// Zero-count entries are never stored, so two counters compare equal iff
/// they describe the same multiset of operations.
struct OpCounter {
  WidthMap mults;
  WidthMap adds;
  WidthMap accums;
  WidthMap shifts;

  void mult(unsigned w, std::uint64_t count = 1) { bump(mults, w, count); }
  void add(unsigned w, std::uint64_t count = 1) { bump(adds, w, count); }
  void accum(unsigned w, std::uint64_t count = 1) { bump(accums, w, count); }
  void shift(unsigned amount, std::uint64_t count = 1) { bump(shifts, amount, count); }

  std::uint64_t total_mults() const;
  std::uint64_t total() const;
  std::uint64_t total_without_shifts() const;
  bool empty() const;

  OpCounter& operator+=(const OpCounter& other);
  /// Every entry multiplied by `factor`.
  OpCounter scaled(std::uint64_t factor) const;

  friend bool operator==(const OpCounter&, const OpCounter&) = default;

 private:
  static void bump(WidthMap& m, unsigned key, std::uint64_t count) {
    if (count != 0) {
      m[key] += count;
    }
  }
};

OpCounter counter_merge(const OpCounter& a, const OpCounter& b);

/// First key at which the two tallies disagree, formatted as
/// "adds[18]: 6 != 8"; nullopt when equal.
std::optional<std::string> first_difference(const OpCounter& a, const OpCounter& b);

/// One line per non-empty map, e.g. "mults: 8:512 16:64".
std::string summarize(const OpCounter& c);

}  // namespace kmm
