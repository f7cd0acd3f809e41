//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/algorithms.hpp"

#include <vector>

namespace kmm {

// Area is measured in units of one full adder (AU).

enum class Primitive { Add, FlipFlop, Mult };

/// add: w, flip-flop: 0.7 w, multiplier: w^2.
double area_primitive(Primitive kind, unsigned w);

struct AreaEstimate {
  double multiplier_au = 0;
  double adder_au = 0;
  double register_au = 0;
  double total_au = 0;

  void add(Primitive kind, unsigned w, double count = 1.0);
  AreaEstimate& operator+=(const AreaEstimate& other);
  AreaEstimate scaled(double factor) const;
};

/// Baseline X x Y array of w-bit multipliers. Each PE holds a, b and a spare
/// b register; accumulators are shared per group of p products with
/// w_p = ceil(log2 p) narrow and w_a = ceil(log2 X) wide extension bits.
AreaEstimate area_mm1_mxu(unsigned X, unsigned Y, unsigned w, unsigned p);

/// Shape of a Karatsuba decomposition. Children, when present, are the
/// high, digit-sum and low sub-units at widths floor(w/2), ceil(w/2)+1 and
/// ceil(w/2).
struct RecursionPlan {
  unsigned width = 0;
  std::vector<RecursionPlan> children;

  bool leaf() const { return children.empty(); }
  unsigned depth() const;
};

/// Full decomposition to log2(n) levels on every branch.
RecursionPlan uniform_plan(unsigned n, unsigned w);

/// Area of one Karatsuba scalar multiplier following `plan`. With
/// KsmTail::Concatenated the low product is wired in and only one 2w-bit
/// adder is charged per level.
AreaEstimate area_ksm_unit(const RecursionPlan& plan, KsmTail tail);

AreaEstimate area_ksmm_mxu(unsigned X, unsigned Y, const RecursionPlan& plan, unsigned p,
                           KsmTail tail = KsmTail::Concatenated);
AreaEstimate area_ksmm_mxu(unsigned X, unsigned Y, unsigned n, unsigned w, unsigned p,
                           KsmTail tail = KsmTail::Concatenated);

/// Per level: 2X input adders on ceil(w/2) bits and 2Y post-adders on
/// 2 ceil(w/2)+4+w_a and 2w+w_a bits, plus the three sub-arrays. Shifts are
/// wiring and cost nothing.
AreaEstimate area_kmm_mxu(unsigned X, unsigned Y, const RecursionPlan& plan, unsigned p);
AreaEstimate area_kmm_mxu(unsigned X, unsigned Y, unsigned n, unsigned w, unsigned p);

struct LevelSelection {
  unsigned levels = 0;
  RecursionPlan plan;
  AreaEstimate area;
};

/// Chooses the decomposition per sub-unit: a unit wider than w_m splits when
/// splitting (with its own children chosen the same way) lowers its area.
/// The top unit always splits at least once. `levels` is the deepest branch.
LevelSelection select_kmm_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y, unsigned p);
LevelSelection select_ksmm_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y, unsigned p,
                                  KsmTail tail = KsmTail::Added);

/// select_kmm_levels(...).levels.
unsigned select_recursion_levels(unsigned w_in, unsigned w_m, unsigned X, unsigned Y, unsigned p);

}  // namespace kmm
