//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "kmm/roofs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmm::sim {

enum class Variant {
  BaselineMM1,           // one array of w_m-bit multipliers, w_in <= w_m
  FixedKMM,              // 3^r concurrent sub-arrays behind input and post-adders
  PrecisionScalableKMM,  // one array, tiles re-read 1/3/4 times (MM/KMM2/MM2)
  PrecisionScalableMM2,  // one array, tiles re-read 1/4 times (MM/MM2)
};

/// "baseline", "fixed-kmm", "ps-kmm", "ps-mm2".
const char* to_string(Variant v);
Variant parse_variant(std::string_view name);

struct MxuConfig {
  unsigned X = 64;  // array width: reduction-dimension PEs per column
  unsigned Y = 64;  // array height: output columns
  unsigned w_m = 8;
  unsigned p = 4;
  std::optional<unsigned> pipeline_latency;  // fill/drain cycles; default X + Y
  Variant variant = Variant::BaselineMM1;

  unsigned latency() const { return pipeline_latency.value_or(X + Y); }
  /// Throws ConfigError on out-of-range geometry or widths.
  void validate() const;
};

struct Dims {
  std::size_t M = 0, K = 0, N = 0;
};

/// "MxKxN", e.g. "512x512x512".
Dims parse_dims(std::string_view text);
std::string format_dims(const Dims& d);

/// Which slice of an operand a pass feeds. With digit boundary s:
/// High = v >> s, Low = v mod 2^s, Sum = High + Low.
enum class Operand { Whole, High, Low, Sum };

/// One term of a pass output transform: sign * (C << shift).
struct OutputTerm {
  int sign;
  unsigned shift;
};

struct PassRole {
  std::string label;
  Operand a;
  Operand b;
  std::vector<OutputTerm> transform;
};

struct TileSchedule {
  PsMode mode;
  unsigned split;  // digit boundary bit; 0 in MM mode
  std::vector<PassRole> passes;

  unsigned reads_per_tile() const { return static_cast<unsigned>(passes.size()); }
};

/// Passes for a precision-scalable array in `mode`. KMM2 splits at w_m - 1
/// and emits (C1 << 2s) - (C1 << s), Cs << s, C0 - (C0 << s); MM2 splits at
/// w_m and emits C1 << 2 w_m, C10 << w_m, C01 << w_m, C0.
TileSchedule make_schedule(PsMode mode, unsigned w_m);

/// Everything a simulate run needs, as read from a config file.
struct SimSpec {
  MxuConfig mxu;
  unsigned w_in = 8;
  Dims dims{64, 64, 64};
  std::uint64_t seed = 1;
};

/// Key-value text: one `key = value` per line, `#` starts a comment. Keys:
/// variant, X, Y, w_m, w_in, p, pipeline_latency, dims, seed.
SimSpec parse_sim_config(std::string_view text);
SimSpec read_sim_config(const std::string& path);

}  // namespace kmm::sim
