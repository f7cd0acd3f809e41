//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/sim/tile_kernel.hpp"

#include "kmm/bitmat.hpp"
#include "kmm/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kmm::sim {

namespace {

template <class T>
bool fits(T v, unsigned width) {
  return width >= sizeof(T) * 8 || (v >> width) == 0;
}

struct Widths {
  unsigned in, narrow, wide;
};

Widths widths_of(const KernelGeometry& geo) {
  return {geo.w, 2 * geo.w + ceil_log2(geo.p), 2 * geo.w + ceil_log2(geo.X)};
}

unsigned groups_of(const KernelGeometry& geo) { return (geo.X + geo.p - 1) / geo.p; }

template <class Acc>
TileStats reference(const KernelGeometry& geo, const TileView& t) {
  const Widths wd = widths_of(geo);
  const std::size_t X = geo.X, Y = geo.Y, p = geo.p;
  const std::size_t G = groups_of(geo);
  TileStats st;
  st.rows = t.rows;

  // Stationary weights, zero outside the valid k x n corner.
  std::vector<std::uint64_t> b_reg(X * Y, 0);
  for (std::size_t k = 0; k < t.k; ++k) {
    for (std::size_t n = 0; n < t.n; ++n) {
      b_reg[k * Y + n] = t.b[k * t.ldb + n];
      ++st.width_checks;
      st.width_violations += !fits(b_reg[k * Y + n], wd.in);
    }
  }
  std::vector<std::uint64_t> a_reg(X * Y, 0);
  std::vector<Acc> psum(G * Y, 0), psum_next(G * Y, 0);

  const std::size_t span = t.rows + G + Y - 1;
  for (std::size_t cyc = 0; cyc < span; ++cyc) {
    // a values hop one column to the right per cycle; group g sees row m
    // enter column 0 at cycle m + g.
    for (std::size_t k = 0; k < X; ++k) {
      for (std::size_t n = Y - 1; n > 0; --n) {
        a_reg[k * Y + n] = a_reg[k * Y + n - 1];
      }
      const std::size_t g = k / p;
      std::uint64_t in = 0;
      if (cyc >= g && cyc - g < t.rows && k < t.k) {
        in = t.a[(cyc - g) * t.lda + k];
      }
      a_reg[k * Y] = in;
    }
    for (std::size_t g = 0; g < G; ++g) {
      for (std::size_t n = 0; n < Y; ++n) {
        if (cyc < g + n || cyc - g - n >= t.rows) {
          continue;
        }
        const std::size_t m = cyc - g - n;
        Acc narrow = 0;
        for (std::size_t k = g * p; k < std::min(X, (g + 1) * p); ++k) {
          const std::uint64_t a = a_reg[k * Y + n];
          ++st.width_checks;
          st.width_violations += !fits(a, wd.in);
          narrow += static_cast<Acc>(a) * b_reg[k * Y + n];
        }
        ++st.width_checks;
        st.width_violations += !fits(narrow, wd.narrow);
        const Acc in = g == 0 ? Acc{0} : psum[(g - 1) * Y + n];
        const Acc out = in + narrow;
        ++st.width_checks;
        st.width_violations += !fits(out, wd.wide);
        psum_next[g * Y + n] = out;
        if (g == G - 1 && n < t.n) {
          t.c[m * t.ldc + n] = out;
        }
      }
    }
    std::swap(psum, psum_next);
  }
  st.cycles = span;
  return st;
}

template <class Acc>
TileStats parallel(const KernelGeometry& geo, const TileView& t) {
  const Widths wd = widths_of(geo);
  const std::size_t p = geo.p;
  TileStats st;
  st.rows = t.rows;

  // Column-major copy so each output column reads B contiguously.
  std::vector<std::uint64_t> bt(t.k * t.n);
  std::uint64_t checks = 0, bad = 0;
  for (std::size_t k = 0; k < t.k; ++k) {
    for (std::size_t n = 0; n < t.n; ++n) {
      bt[n * t.k + k] = t.b[k * t.ldb + n];
      ++checks;
      bad += !fits(bt[n * t.k + k], wd.in);
    }
  }

  const auto rows = static_cast<std::ptrdiff_t>(t.rows);
#pragma omp parallel for schedule(static) reduction(+ : checks, bad)
  for (std::ptrdiff_t m = 0; m < rows; ++m) {
    const std::uint64_t* arow = t.a + m * t.lda;
    for (std::size_t k = 0; k < t.k; ++k) {
      ++checks;
      bad += !fits(arow[k], wd.in);
    }
    for (std::size_t n = 0; n < t.n; ++n) {
      const std::uint64_t* bcol = bt.data() + n * t.k;
      Acc acc = 0;
      for (std::size_t k0 = 0; k0 < t.k; k0 += p) {
        const std::size_t k1 = std::min(t.k, k0 + p);
        Acc narrow = 0;
        for (std::size_t k = k0; k < k1; ++k) {
          narrow += static_cast<Acc>(arow[k]) * bcol[k];
        }
        acc += narrow;
        checks += 2;
        bad += !fits(narrow, wd.narrow);
        bad += !fits(acc, wd.wide);
      }
      t.c[m * t.ldc + n] = acc;
    }
  }
  st.width_checks = checks;
  st.width_violations = bad;
  st.cycles = tile_latency(geo, t.rows);
  return st;
}

}  // namespace

std::uint64_t tile_latency(const KernelGeometry& geo, std::uint64_t rows) {
  return rows + groups_of(geo) + geo.Y - 1;
}

TileStats run_tile(KernelImpl impl, const KernelGeometry& geo, const TileView& tile) {
  if (tile.k > geo.X || tile.n > geo.Y) {
    throw DimensionError("tile " + std::to_string(tile.k) + "x" + std::to_string(tile.n) +
                         " does not fit a " + std::to_string(geo.X) + "x" +
                         std::to_string(geo.Y) + " array");
  }
  const unsigned wide = 2 * geo.w + ceil_log2(geo.X);
  if (geo.w > 64 || wide > 128) {
    throw ConfigError("a " + std::to_string(geo.w) + "-bit array on " + std::to_string(geo.X) +
                      " rows needs " + std::to_string(wide) + "-bit partial sums");
  }
  const bool narrow = wide <= 64;
  if (impl == KernelImpl::Reference) {
    return narrow ? reference<std::uint64_t>(geo, tile) : reference<Wide>(geo, tile);
  }
  return narrow ? parallel<std::uint64_t>(geo, tile) : parallel<Wide>(geo, tile);
}

}  // namespace kmm::sim
