//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/op_counter.hpp"

#include <sstream>

namespace kmm {

namespace {

std::uint64_t sum(const WidthMap& m) {
  std::uint64_t s = 0;
  for (const auto& [w, c] : m) {
    s += c;
  }
  return s;
}

void merge_into(WidthMap& dst, const WidthMap& src) {
  for (const auto& [w, c] : src) {
    dst[w] += c;
  }
}

std::optional<std::string> diff_map(const char* name, const WidthMap& a, const WidthMap& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    unsigned key;
    std::uint64_t va = 0;
    std::uint64_t vb = 0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      key = ia->first;
      va = (ia++)->second;
    } else if (ia == a.end() || ib->first < ia->first) {
      key = ib->first;
      vb = (ib++)->second;
    } else {
      key = ia->first;
      va = (ia++)->second;
      vb = (ib++)->second;
    }
    if (va != vb) {
      std::ostringstream os;
      os << name << "[" << key << "]: " << va << " != " << vb;
      return os.str();
    }
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t OpCounter::total_mults() const { return sum(mults); }

std::uint64_t OpCounter::total() const { return total_without_shifts() + sum(shifts); }

std::uint64_t OpCounter::total_without_shifts() const {
  return sum(mults) + sum(adds) + sum(accums);
}

bool OpCounter::empty() const {
  return mults.empty() && adds.empty() && accums.empty() && shifts.empty();
}

OpCounter& OpCounter::operator+=(const OpCounter& other) {
  merge_into(mults, other.mults);
  merge_into(adds, other.adds);
  merge_into(accums, other.accums);
  merge_into(shifts, other.shifts);
  return *this;
}

OpCounter OpCounter::scaled(std::uint64_t factor) const {
  OpCounter out;
  if (factor == 0) {
    return out;
  }
  for (const auto& [w, c] : mults) out.mults[w] = c * factor;
  for (const auto& [w, c] : adds) out.adds[w] = c * factor;
  for (const auto& [w, c] : accums) out.accums[w] = c * factor;
  for (const auto& [w, c] : shifts) out.shifts[w] = c * factor;
  return out;
}

OpCounter counter_merge(const OpCounter& a, const OpCounter& b) {
  OpCounter out = a;
  out += b;
  return out;
}

std::optional<std::string> first_difference(const OpCounter& a, const OpCounter& b) {
  if (auto d = diff_map("mults", a.mults, b.mults)) return d;
  if (auto d = diff_map("adds", a.adds, b.adds)) return d;
  if (auto d = diff_map("accums", a.accums, b.accums)) return d;
  return diff_map("shifts", a.shifts, b.shifts);
}

std::string summarize(const OpCounter& c) {
  std::ostringstream os;
  auto line = [&os](const char* name, const WidthMap& m) {
    if (m.empty()) {
      return;
    }
    os << name << ":";
    for (const auto& [w, n] : m) {
      os << " " << w << ":" << n;
    }
    os << "\n";
  };
  line("mults", c.mults);
  line("adds", c.adds);
  line("accums", c.accums);
  line("shifts", c.shifts);
  os << "total: " << c.total() << " (without shifts: " << c.total_without_shifts() << ")\n";
  return os.str();
}

}  // namespace kmm
