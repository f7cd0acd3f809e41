//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/area.hpp"

#include "kmm/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace kmm {

namespace {

constexpr double kFlipFlopRatio = 0.7;

void check_geometry(unsigned X, unsigned Y, unsigned p) {
  if (X == 0 || Y == 0) {
    throw ConfigError("array dimensions must be at least 1");
  }
  if (p == 0) {
    throw ConfigError("group size p must be at least 1");
  }
}

RecursionPlan split(unsigned w, RecursionPlan hi, RecursionPlan sum, RecursionPlan lo) {
  RecursionPlan plan{w, {}};
  plan.children.push_back(std::move(hi));
  plan.children.push_back(std::move(sum));
  plan.children.push_back(std::move(lo));
  return plan;
}

void check_plan(const RecursionPlan& plan) {
  if (plan.width == 0) {
    throw ConfigError("recursion plan has a zero-width unit");
  }
  if (plan.leaf()) {
    return;
  }
  const unsigned w = plan.width, h = ceil_half(w);
  if (plan.children.size() != 3 || w < 2 || plan.children[0].width != floor_half(w) ||
      plan.children[1].width != h + 1 || plan.children[2].width != h) {
    throw ConfigError("recursion plan node at width " + std::to_string(w) +
                      " does not split into floor(w/2), ceil(w/2)+1, ceil(w/2)");
  }
  for (const auto& c : plan.children) {
    check_plan(c);
  }
}

// Adders of one Karatsuba scalar level, excluding its three sub-units.
AreaEstimate ksm_level(unsigned w, KsmTail tail) {
  const unsigned h = ceil_half(w);
  AreaEstimate a;
  a.add(Primitive::Add, 2 * w, tail == KsmTail::Added ? 2 : 1);
  a.add(Primitive::Add, 2 * h + 4, 2);
  a.add(Primitive::Add, h, 2);
  return a;
}

// Input and post-adders of one Karatsuba array level, excluding its three
// sub-arrays.
AreaEstimate kmm_level(unsigned X, unsigned Y, unsigned w) {
  const unsigned h = ceil_half(w);
  const unsigned wa = ceil_log2(X);
  AreaEstimate a;
  a.add(Primitive::Add, h, 2.0 * X);
  a.add(Primitive::Add, 2 * h + 4 + wa, 2.0 * Y);
  a.add(Primitive::Add, 2 * w + wa, 2.0 * Y);
  return a;
}

AreaEstimate ksm_area(const RecursionPlan& plan, KsmTail tail) {
  AreaEstimate a;
  if (plan.leaf()) {
    a.add(Primitive::Mult, plan.width);
    return a;
  }
  a = ksm_level(plan.width, tail);
  for (const auto& c : plan.children) {
    a += ksm_area(c, tail);
  }
  return a;
}

AreaEstimate kmm_area(unsigned X, unsigned Y, const RecursionPlan& plan, unsigned p) {
  if (plan.leaf()) {
    return area_mm1_mxu(X, Y, plan.width, p);
  }
  AreaEstimate a = kmm_level(X, Y, plan.width);
  for (const auto& c : plan.children) {
    a += kmm_area(X, Y, c, p);
  }
  return a;
}

AreaEstimate ksmm_from_unit(unsigned X, unsigned Y, unsigned w, unsigned p,
                            const AreaEstimate& unit) {
  // Same array as the baseline with the multiplier swapped out.
  AreaEstimate base = area_mm1_mxu(X, Y, w, p);
  const double pes = static_cast<double>(X) * Y;
  base.multiplier_au = 0;
  base.total_au = base.adder_au + base.register_au;
  base += unit.scaled(pes);
  return base;
}

// Memoized by width: every unit of a given width chooses identically.
class Chooser {
 public:
  using Cost = std::function<double(unsigned width)>;

  Chooser(unsigned w_m, Cost leaf_cost, Cost split_overhead)
      : w_m_(w_m), leaf_(std::move(leaf_cost)), overhead_(std::move(split_overhead)) {}

  // Cheapest plan for a unit of width w and its cost.
  const std::pair<RecursionPlan, double>& best(unsigned w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) {
      return it->second;
    }
    RecursionPlan leaf{w, {}};
    std::pair<RecursionPlan, double> choice{leaf, leaf_(w)};
    if (w > w_m_ && w >= 2) {
      auto forced = split_once(w);
      if (forced.second < choice.second) {
        choice = std::move(forced);
      }
    }
    return memo_.emplace(w, std::move(choice)).first->second;
  }

  std::pair<RecursionPlan, double> split_once(unsigned w) {
    const unsigned h = ceil_half(w);
    auto hi = best(floor_half(w));
    auto sum = best(h + 1);
    auto lo = best(h);
    RecursionPlan plan = split(w, hi.first, sum.first, lo.first);
    const double cost = overhead_(w) + hi.second + sum.second + lo.second;
    return {std::move(plan), cost};
  }

 private:
  unsigned w_m_;
  Cost leaf_;
  Cost overhead_;
  std::map<unsigned, std::pair<RecursionPlan, double>> memo_;
};

}  // namespace

double area_primitive(Primitive kind, unsigned w) {
  const double x = w;
  switch (kind) {
    case Primitive::Add:
      return x;
    case Primitive::FlipFlop:
      return kFlipFlopRatio * x;
    case Primitive::Mult:
      return x * x;
  }
  return 0.0;
}

void AreaEstimate::add(Primitive kind, unsigned w, double count) {
  const double au = count * area_primitive(kind, w);
  switch (kind) {
    case Primitive::Add:
      adder_au += au;
      break;
    case Primitive::FlipFlop:
      register_au += au;
      break;
    case Primitive::Mult:
      multiplier_au += au;
      break;
  }
  total_au += au;
}

AreaEstimate& AreaEstimate::operator+=(const AreaEstimate& other) {
  multiplier_au += other.multiplier_au;
  adder_au += other.adder_au;
  register_au += other.register_au;
  total_au += other.total_au;
  return *this;
}

AreaEstimate AreaEstimate::scaled(double factor) const {
  return {multiplier_au * factor, adder_au * factor, register_au * factor, total_au * factor};
}

AreaEstimate area_mm1_mxu(unsigned X, unsigned Y, unsigned w, unsigned p) {
  check_geometry(X, Y, p);
  const unsigned wa = ceil_log2(X);
  const unsigned wp = ceil_log2(p);
  AreaEstimate pe;
  pe.add(Primitive::Mult, w);
  pe.add(Primitive::FlipFlop, w, 3);
  const double share = 1.0 / p;
  pe.add(Primitive::Add, 2 * w + wp, (p - 1) * share);
  pe.add(Primitive::Add, 2 * w + wa, share);
  pe.add(Primitive::FlipFlop, 2 * w + wa, share);
  return pe.scaled(static_cast<double>(X) * Y);
}

unsigned RecursionPlan::depth() const {
  unsigned d = 0;
  for (const auto& c : children) {
    d = std::max(d, c.depth());
  }
  return leaf() ? 0 : d + 1;
}

RecursionPlan uniform_plan(unsigned n, unsigned w) {
  DigitParams params;
  params.n = n;
  params.w = w;
  validate(params);
  if (n == 1) {
    return {w, {}};
  }
  const unsigned h = ceil_half(w);
  return split(w, uniform_plan(n / 2, floor_half(w)), uniform_plan(n / 2, h + 1),
               uniform_plan(n / 2, h));
}

AreaEstimate area_ksm_unit(const RecursionPlan& plan, KsmTail tail) {
  check_plan(plan);
  return ksm_area(plan, tail);
}

AreaEstimate area_ksmm_mxu(unsigned X, unsigned Y, const RecursionPlan& plan, unsigned p,
                           KsmTail tail) {
  check_geometry(X, Y, p);
  return ksmm_from_unit(X, Y, plan.width, p, area_ksm_unit(plan, tail));
}

AreaEstimate area_ksmm_mxu(unsigned X, unsigned Y, unsigned n, unsigned w, unsigned p,
                           KsmTail tail) {
  return area_ksmm_mxu(X, Y, uniform_plan(n, w), p, tail);
}

AreaEstimate area_kmm_mxu(unsigned X, unsigned Y, const RecursionPlan& plan, unsigned p) {
  check_geometry(X, Y, p);
  check_plan(plan);
  return kmm_area(X, Y, plan, p);
}

AreaEstimate area_kmm_mxu(unsigned X, unsigned Y, unsigned n, unsigned w, unsigned p) {
  return area_kmm_mxu(X, Y, uniform_plan(n, w), p);
}

LevelSelection select_kmm_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y,
                                 unsigned p) {
  check_geometry(X, Y, p);
  if (w_in < 2 || w_in <= w_m) {
    throw ConfigError("level selection needs w_in > w_m and w_in >= 2");
  }
  Chooser chooser(
      w_m, [&](unsigned w) { return area_mm1_mxu(X, Y, w, p).total_au; },
      [&](unsigned w) { return kmm_level(X, Y, w).total_au; });
  LevelSelection sel;
  sel.plan = chooser.split_once(w_in).first;
  sel.levels = sel.plan.depth();
  sel.area = kmm_area(X, Y, sel.plan, p);
  return sel;
}

LevelSelection select_ksmm_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y, unsigned p,
                                  KsmTail tail) {
  check_geometry(X, Y, p);
  if (w_in < 2 || w_in <= w_m) {
    throw ConfigError("level selection needs w_in > w_m and w_in >= 2");
  }
  // Per-PE registers and accumulators do not depend on the plan.
  Chooser chooser(
      w_m, [](unsigned w) { return area_primitive(Primitive::Mult, w); },
      [&](unsigned w) { return ksm_level(w, tail).total_au; });
  LevelSelection sel;
  sel.plan = chooser.split_once(w_in).first;
  sel.levels = sel.plan.depth();
  sel.area = area_ksmm_mxu(X, Y, sel.plan, p, tail);
  return sel;
}

unsigned select_recursion_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y, unsigned p) {
  return select_kmm_levels(w_in, w_m, X, Y, p).levels;
}

}  // namespace kmm
