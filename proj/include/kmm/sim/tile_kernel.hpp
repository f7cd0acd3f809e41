//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>

namespace kmm::sim {

using Wide = unsigned __int128;

/// Physical array the tile runs on: X reduction PEs by Y output columns of
/// w-bit multipliers, pre-summing groups of p products.
struct KernelGeometry {
  unsigned X;
  unsigned Y;
  unsigned w;
  unsigned p;
};

/// One weight-stationary tile: `rows` rows of A (k <= X valid columns)
/// streamed against a k x n (n <= Y) B tile. `c` is overwritten.
struct TileView {
  const std::uint64_t* a;
  std::size_t lda;
  const std::uint64_t* b;
  std::size_t ldb;
  Wide* c;
  std::size_t ldc;
  std::size_t rows;
  std::size_t k;
  std::size_t n;
};

struct TileStats {
  std::uint64_t rows = 0;    // A rows streamed, one per cycle
  std::uint64_t cycles = 0;  // first row in to last result out
  std::uint64_t width_checks = 0;
  std::uint64_t width_violations = 0;
};

enum class KernelImpl {
  Reference,  // serial, cycle-stepped register model
  Parallel,   // OpenMP over rows, same arithmetic and checks
};

/// Register widths checked: inputs on w bits, group pre-sums on
/// 2w + ceil(log2 p), column partial sums on 2w + ceil(log2 X).
/// Throws ConfigError if 2w + ceil(log2 X) exceeds 128 bits.
TileStats run_tile(KernelImpl impl, const KernelGeometry& geo, const TileView& tile);

/// First row in to last result out for a tile of `rows` rows.
std::uint64_t tile_latency(const KernelGeometry& geo, std::uint64_t rows);

}  // namespace kmm::sim
