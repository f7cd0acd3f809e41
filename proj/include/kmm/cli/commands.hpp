//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace kmm::cli {

/// Parsed command line. Unset optionals fall back to per-command defaults
/// (or, for simulate, to the config file).
struct RunSpec {
  std::optional<std::string> alg;      // sm, ksm, mm1, mmn, ksmm, kmm
  std::optional<std::string> variant;  // baseline, fixed-kmm, ps-kmm, ps-mm2
  std::optional<unsigned> n;
  std::optional<unsigned> w_in;
  std::optional<unsigned> w_m;
  std::optional<unsigned> p;
  std::optional<unsigned> X;
  std::optional<unsigned> Y;
  std::optional<std::string> dims;  // MxKxN
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> reps;
  std::optional<unsigned> latency;
  std::optional<unsigned> min_width;  // narrowest unit level selection may split
  std::optional<std::string> a_path;
  std::optional<std::string> b_path;
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  bool no_check = false;
  bool inject_fault = false;
  bool timing_only = false;
  bool concatenated_tail = false;
};

// Exit status: 0 success, 1 a check failed, 2 invalid input or parameters.
// Results go to `out` (or the --out path, written atomically at the end);
// diagnostics go to `err`.

/// Multiplies two matrix files with the chosen algorithm.
int run_multiply(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Random instances over an (n, w, d) grid: product vs oracle and operation
/// counts vs closed form.
int run_verify(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Emits arith_counts.csv, multiplier_roofs.csv and area_roofs.csv.
int run_model(const RunSpec& spec, std::ostream& out, std::ostream& err);
/// Runs one GEMM through the simulator.
int run_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace kmm::cli
