//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP kernels: the systolic tile and the product oracle.

#include "kmm/bitmat.hpp"
#include "kmm/oracle.hpp"
#include "kmm/sim/simulator.hpp"
#include "kmm/sim/tile_kernel.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using kmm::sim::KernelImpl;

void tile(benchmark::State& state, KernelImpl impl) {
  const unsigned X = 64, Y = 64, w = static_cast<unsigned>(state.range(1));
  const std::size_t rows = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
  std::vector<std::uint64_t> a(rows * X), b(X * Y);
  for (auto& v : a) v = gen() & mask;
  for (auto& v : b) v = gen() & mask;
  std::vector<kmm::sim::Wide> c(rows * Y);
  const kmm::sim::KernelGeometry geo{X, Y, w, 4};
  const kmm::sim::TileView view{a.data(), X, b.data(), Y, c.data(), Y, rows, X, Y};
  for (auto _ : state) {
    auto st = kmm::sim::run_tile(impl, geo, view);
    benchmark::DoNotOptimize(st);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * rows * X * Y);
}

void BM_TileReference(benchmark::State& s) { tile(s, KernelImpl::Reference); }
void BM_TileParallel(benchmark::State& s) { tile(s, KernelImpl::Parallel); }

BENCHMARK(BM_TileReference)->Args({64, 8})->Args({512, 8})->Args({512, 24});
BENCHMARK(BM_TileParallel)->Args({64, 8})->Args({512, 8})->Args({512, 24});

void oracle(benchmark::State& state, bool parallel) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto a = kmm::random_matrix(d, d, 16, 1);
  const auto b = kmm::random_matrix(d, d, 16, 2);
  for (auto _ : state) {
    auto c = parallel ? kmm::naive_matmul_parallel(a, b) : kmm::naive_matmul(a, b);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * d * d * d);
}

void BM_OracleSerial(benchmark::State& s) { oracle(s, false); }
void BM_OracleParallel(benchmark::State& s) { oracle(s, true); }

BENCHMARK(BM_OracleSerial)->Arg(32)->Arg(96);
BENCHMARK(BM_OracleParallel)->Arg(32)->Arg(96);

void gemm(benchmark::State& state, KernelImpl impl) {
  kmm::sim::MxuConfig cfg;
  cfg.variant = kmm::sim::Variant::PrecisionScalableKMM;
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto a = kmm::random_matrix(d, d, 12, 3);
  const auto b = kmm::random_matrix(d, d, 12, 4);
  for (auto _ : state) {
    auto r = kmm::sim::gemm_driver(cfg, a, b, 12, {impl});
    benchmark::DoNotOptimize(r.report.total_cycles);
  }
}

void BM_GemmReference(benchmark::State& s) { gemm(s, KernelImpl::Reference); }
void BM_GemmParallel(benchmark::State& s) { gemm(s, KernelImpl::Parallel); }

BENCHMARK(BM_GemmReference)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GemmParallel)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
