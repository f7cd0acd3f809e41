//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/bitmat.hpp"
#include "kmm/sim/config.hpp"
#include "kmm/sim/tile_kernel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmm::sim {

struct PassTrace {
  std::string label;
  std::uint64_t cycles = 0;
  std::uint64_t tile_steps = 0;
};

struct SimReport {
  Variant variant = Variant::BaselineMM1;
  std::string mode;  // MM, KMM2, MM2, or KMM for the fixed-precision array
  unsigned w_in = 0;
  unsigned w_m = 0;
  unsigned X = 0, Y = 0;
  Dims dims;
  unsigned r = 0;  // Karatsuba levels credited by the efficiency metric
  unsigned reads = 0;
  std::uint64_t multipliers = 0;
  std::uint64_t total_cycles = 0;
  std::uint64_t steady_cycles = 0;  // total minus each pass's first B load and drain
  std::uint64_t tile_steps = 0;     // (B tile, X-row A chunk) pairs over all passes
  std::uint64_t base_mults_performed = 0;
  std::uint64_t effective_win_mults = 0;  // M K N
  double efficiency = 0;         // 4^r * effective / (multipliers * total_cycles)
  double steady_efficiency = 0;  // same over steady_cycles
  std::vector<PassTrace> passes;
  std::uint64_t width_checks = 0;
};

struct SimOptions {
  KernelImpl kernel = KernelImpl::Parallel;
};

struct SimResult {
  UMatrix product;
  SimReport report;
};

// Functional runs. Each returns the product and its timing. Every datapath
// register is checked against its declared width; a violation throws
// WidthViolation after the offending pass.

/// w_in is the width operands are declared at; elements must fit it.
/// Requires w_in <= w_m.
SimResult simulate_mm1_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                           unsigned w_in, const SimOptions& opts = {});
/// Requires w_m < w_in <= 64. Uses recursion_depth(w_in, w_m) levels.
SimResult simulate_fixed_kmm_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                                 unsigned w_in, const SimOptions& opts = {});
/// Precision-scalable arrays (ps-kmm and ps-mm2). Requires w_in <= 2 w_m.
SimResult simulate_ps_kmm_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                              unsigned w_in, const SimOptions& opts = {});

/// Dispatches on cfg.variant.
SimResult gemm_driver(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b, unsigned w_in,
                      const SimOptions& opts = {});

/// Cycle accounting without a datapath. Timing never depends on operand
/// values, so this equals the report of a functional run on any data of the
/// same shape.
SimReport gemm_timing(const MxuConfig& cfg, const Dims& dims, unsigned w_in);

/// variant,w_in,w_m,X,Y,M,K,N,mode,reads,cycles,efficiency
std::string csv_header();
std::string csv_row(const SimReport& r);
std::string summary(const SimReport& r);

}  // namespace kmm::sim
