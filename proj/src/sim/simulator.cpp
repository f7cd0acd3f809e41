//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/sim/simulator.hpp"

#include "kmm/area.hpp"
#include "kmm/curves.hpp"
#include "kmm/errors.hpp"
#include "kmm/oracle.hpp"
#include "kmm/roofs.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

namespace kmm::sim {

namespace {

using Signed = __int128;

bool fits_signed128(Signed v, unsigned width) {
  if (width >= 128) {
    return true;
  }
  const Signed lim = Signed{1} << (width - 1);
  return v >= -lim && v < lim;
}

BigInt to_big(Wide v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

BigInt to_big(Signed v) {
  if (v < 0) {
    return -to_big(static_cast<Wide>(-(v + 1))) - 1;
  }
  return to_big(static_cast<Wide>(v));
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::uint64_t pow_u(std::uint64_t base, unsigned e) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= base;
  }
  return v;
}

std::vector<std::uint64_t> to_words(const UMatrix& m, unsigned w_in, const char* name) {
  if (w_in == 0 || w_in > 64) {
    throw WidthError("input width " + std::to_string(w_in) + " is outside [1, 64]");
  }
  std::vector<std::uint64_t> out;
  out.reserve(m.rows() * m.cols());
  std::size_t i = 0;
  for (const auto& e : m.elements()) {
    if (!fits_unsigned(e, w_in)) {
      throw WidthError(std::string("element (") + std::to_string(i / m.cols()) + "," +
                       std::to_string(i % m.cols()) + ") of " + name + " exceeds " +
                       std::to_string(w_in) + " bits");
    }
    out.push_back(static_cast<std::uint64_t>(e));
    ++i;
  }
  return out;
}

// Order in which a pass visits B tiles: N tiles outer, K tiles inner.
struct TileGrid {
  std::size_t M, K, N, X, Y;
  std::size_t k_tiles() const { return ceil_div(K, X); }
  std::size_t n_tiles() const { return ceil_div(N, Y); }
  std::size_t count() const { return k_tiles() * n_tiles(); }
  std::size_t chunks() const { return ceil_div(M, X); }
  std::size_t k_valid(std::size_t kt) const { return std::min(X, K - kt * X); }
};

// A pass streams the whole of A against every B tile. Tile j+1 loads behind
// tile j's stream; only the first load and the final drain are exposed.
std::uint64_t pass_cycles(const std::vector<std::uint64_t>& loads,
                          const std::vector<std::uint64_t>& streams, std::uint64_t latency) {
  std::uint64_t c = loads.front();
  for (std::size_t j = 0; j + 1 < loads.size(); ++j) {
    c += std::max(streams[j], loads[j + 1]);
  }
  return c + streams.back() + latency;
}

// Runs one pass. `compute(m0, rows, kt, nt)` does the arithmetic for one
// (A chunk, B tile) pair and returns the rows it streamed.
PassTrace run_pass(const std::string& label, const TileGrid& g, std::uint64_t latency,
                   const std::function<std::uint64_t(std::size_t, std::size_t, std::size_t,
                                                     std::size_t)>& compute) {
  std::vector<std::uint64_t> loads, streams;
  PassTrace trace{label, 0, 0};
  for (std::size_t nt = 0; nt < g.n_tiles(); ++nt) {
    for (std::size_t kt = 0; kt < g.k_tiles(); ++kt) {
      std::uint64_t rows = 0;
      for (std::size_t m0 = 0; m0 < g.M; m0 += g.X) {
        rows += compute(m0, std::min(g.X, g.M - m0), kt, nt);
        ++trace.tile_steps;
      }
      loads.push_back(g.k_valid(kt));
      streams.push_back(rows);
    }
  }
  trace.cycles = pass_cycles(loads, streams, latency);
  return trace;
}

PassTrace timing_pass(const std::string& label, const TileGrid& g, std::uint64_t latency) {
  std::vector<std::uint64_t> loads, streams;
  for (std::size_t nt = 0; nt < g.n_tiles(); ++nt) {
    for (std::size_t kt = 0; kt < g.k_tiles(); ++kt) {
      loads.push_back(g.k_valid(kt));
      streams.push_back(g.M);
    }
  }
  return {label, pass_cycles(loads, streams, latency), g.count() * g.chunks()};
}

void check_violations(std::uint64_t bad, const std::string& where) {
  if (bad != 0) {
    throw WidthViolation(std::to_string(bad) + " datapath value(s) overflowed their declared " +
                         "width in " + where);
  }
}

struct Plan {
  std::string mode;
  unsigned r = 0;
  std::uint64_t multipliers = 0;
  std::vector<std::string> pass_labels;
  std::uint64_t mults_per_product = 1;  // base multiplies per effective one
};

void validate_dims(const Dims& d) {
  if (d.M == 0 || d.K == 0 || d.N == 0) {
    throw DimensionError("GEMM dimensions must be positive");
  }
}

Plan plan_for(const MxuConfig& cfg, unsigned w_in) {
  cfg.validate();
  const std::uint64_t xy = std::uint64_t{cfg.X} * cfg.Y;
  Plan plan;
  switch (cfg.variant) {
    case Variant::BaselineMM1:
      if (w_in == 0 || w_in > cfg.w_m) {
        throw WidthError("baseline array takes inputs of 1.." + std::to_string(cfg.w_m) +
                         " bits, got " + std::to_string(w_in));
      }
      plan.mode = "MM";
      plan.multipliers = xy;
      plan.pass_labels = {"C"};
      break;
    case Variant::FixedKMM: {
      if (w_in <= cfg.w_m) {
        throw ConfigError("fixed-precision KMM needs w_in > w_m; use the baseline variant for " +
                          std::to_string(w_in) + "-bit inputs");
      }
      if (w_in > 64) {
        throw WidthError("input width " + std::to_string(w_in) + " exceeds 64 bits");
      }
      plan.r = recursion_depth(w_in, cfg.w_m);
      plan.mode = "KMM";
      plan.mults_per_product = pow_u(3, plan.r);
      plan.multipliers = plan.mults_per_product * xy;
      plan.pass_labels = {"C"};
      break;
    }
    case Variant::PrecisionScalableKMM:
    case Variant::PrecisionScalableMM2: {
      const bool karatsuba = cfg.variant == Variant::PrecisionScalableKMM;
      const PsMode mode = select_ps_mode(w_in, cfg.w_m, karatsuba);
      const TileSchedule sched = make_schedule(mode, cfg.w_m);
      plan.mode = to_string(mode);
      plan.r = recursion_depth(w_in, cfg.w_m);
      plan.multipliers = xy;
      plan.mults_per_product = sched.reads_per_tile();
      for (const auto& pr : sched.passes) {
        plan.pass_labels.push_back(pr.label);
      }
      break;
    }
  }
  return plan;
}

SimReport finish_report(const MxuConfig& cfg, const Plan& plan, const Dims& d, unsigned w_in,
                        std::vector<PassTrace> passes, std::uint64_t checks) {
  SimReport r;
  r.variant = cfg.variant;
  r.mode = plan.mode;
  r.w_in = w_in;
  r.w_m = cfg.w_m;
  r.X = cfg.X;
  r.Y = cfg.Y;
  r.dims = d;
  r.r = plan.r;
  r.reads = static_cast<unsigned>(passes.size());
  r.multipliers = plan.multipliers;
  r.effective_win_mults = d.M * d.K * d.N;
  r.base_mults_performed = plan.mults_per_product * r.effective_win_mults;
  const std::uint64_t first_load = std::min<std::size_t>(cfg.X, d.K);
  for (const auto& p : passes) {
    r.total_cycles += p.cycles;
    r.tile_steps += p.tile_steps;
    r.steady_cycles += p.cycles - first_load - cfg.latency();
  }
  const double work = static_cast<double>(pow_u(4, plan.r)) * r.effective_win_mults;
  r.efficiency = work / (static_cast<double>(r.multipliers) * r.total_cycles);
  r.steady_efficiency =
      r.steady_cycles == 0 ? 0.0 : work / (static_cast<double>(r.multipliers) * r.steady_cycles);
  r.passes = std::move(passes);
  r.width_checks = checks;
  return r;
}

std::uint64_t operand_word(std::uint64_t v, Operand which, unsigned split) {
  switch (which) {
    case Operand::Whole:
      return v;
    case Operand::High:
      return v >> split;
    case Operand::Low:
      return v & ((std::uint64_t{1} << split) - 1);
    case Operand::Sum:
      return (v >> split) + (v & ((std::uint64_t{1} << split) - 1));
  }
  return 0;
}

// Baseline and precision-scalable arrays: one physical w_m-bit array,
// tiles re-read once per schedule pass, transformed partial products summed
// in a full-width external accumulator.
SimResult run_single_array(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                           unsigned w_in, const TileSchedule& sched, const Plan& plan,
                           const SimOptions& opts) {
  if (a.cols() != b.rows()) {
    throw DimensionError("inner dimensions differ: A has " + std::to_string(a.cols()) +
                         " columns, B has " + std::to_string(b.rows()) + " rows");
  }
  const Dims d{a.rows(), a.cols(), b.cols()};
  const auto aw = to_words(a, w_in, "A");
  const auto bw = to_words(b, w_in, "B");
  const TileGrid g{d.M, d.K, d.N, cfg.X, cfg.Y};
  const KernelGeometry geo{cfg.X, cfg.Y, cfg.w_m, cfg.p};
  const unsigned wa = ceil_log2(cfg.X);
  const unsigned top = std::max(w_in, 2 * sched.split);
  const unsigned acc_width = 2 * top + ceil_log2(d.K) + 2;

  std::vector<Signed> ext(d.M * d.N, 0);
  std::vector<PassTrace> passes;
  std::uint64_t checks = 0;

  for (const auto& role : sched.passes) {
    std::vector<std::uint64_t> pa(aw.size()), pb(bw.size());
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < aw.size(); ++i) {
      pa[i] = operand_word(aw[i], role.a, sched.split);
    }
    for (std::size_t i = 0; i < bw.size(); ++i) {
      pb[i] = operand_word(bw[i], role.b, sched.split);
    }
    if (role.a == Operand::Sum || role.b == Operand::Sum) {
      // Input adders produce (split + 1)-bit digit sums.
      for (auto v : pa) bad += v >> (sched.split + 1) != 0;
      for (auto v : pb) bad += v >> (sched.split + 1) != 0;
      checks += pa.size() + pb.size();
    }
    unsigned max_shift = 0;
    for (const auto& t : role.transform) {
      max_shift = std::max(max_shift, t.shift);
    }
    const unsigned term_width = 2 * cfg.w_m + wa + max_shift + 1;

    std::vector<Wide> out(cfg.X * cfg.Y);
    PassTrace trace = run_pass(
        role.label, g, cfg.latency(),
        [&](std::size_t m0, std::size_t rows, std::size_t kt, std::size_t nt) {
          const std::size_t k0 = kt * cfg.X, n0 = nt * cfg.Y;
          const std::size_t kk = g.k_valid(kt), nn = std::min<std::size_t>(cfg.Y, d.N - n0);
          TileView view{pa.data() + m0 * d.K + k0, d.K, pb.data() + k0 * d.N + n0, d.N,
                        out.data(), cfg.Y, rows, kk, nn};
          const TileStats st = run_tile(opts.kernel, geo, view);
          checks += st.width_checks;
          bad += st.width_violations;
          for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < nn; ++j) {
              const Signed c = static_cast<Signed>(out[i * cfg.Y + j]);
              Signed term = 0;
              for (const auto& t : role.transform) {
                term += t.sign > 0 ? (c << t.shift) : -(c << t.shift);
              }
              Signed& acc = ext[(m0 + i) * d.N + n0 + j];
              acc += term;
              checks += 2;
              bad += !fits_signed128(term, term_width);
              bad += !fits_signed128(acc, acc_width);
            }
          }
          return st.rows;
        });
    check_violations(bad, "pass " + role.label);
    passes.push_back(std::move(trace));
  }

  std::vector<BigInt> c;
  c.reserve(ext.size());
  for (auto v : ext) {
    c.push_back(to_big(v));
  }
  UMatrix product(d.M, d.N, product_width(w_in, w_in, d.K), std::move(c));
  return {std::move(product), finish_report(cfg, plan, d, w_in, std::move(passes), checks)};
}

// Karatsuba array tree for one (A chunk, B tile) pair. Leaves are physical
// arrays sized to their own operand width.
struct KmmTreeRun {
  const MxuConfig& cfg;
  KernelImpl impl;
  std::uint64_t checks = 0;
  std::uint64_t bad = 0;
  std::uint64_t rows = 0;

  std::vector<BigInt> run(const RecursionPlan& plan, const std::vector<std::uint64_t>& a,
                          const std::vector<std::uint64_t>& b, std::size_t rows_, std::size_t kk,
                          std::size_t nn) {
    const unsigned w = plan.width;
    if (plan.leaf()) {
      const KernelGeometry geo{cfg.X, cfg.Y, w, cfg.p};
      std::vector<Wide> out(rows_ * nn);
      const TileStats st =
          run_tile(impl, geo, TileView{a.data(), kk, b.data(), nn, out.data(), nn, rows_, kk, nn});
      checks += st.width_checks;
      bad += st.width_violations;
      rows = std::max(rows, st.rows);
      std::vector<BigInt> c;
      c.reserve(out.size());
      for (auto v : out) {
        c.push_back(to_big(v));
      }
      return c;
    }
    const unsigned h = ceil_half(w);
    const std::uint64_t mask = (std::uint64_t{1} << h) - 1;
    auto slices = [&](const std::vector<std::uint64_t>& v) {
      std::array<std::vector<std::uint64_t>, 3> s;
      for (auto x : v) {
        const std::uint64_t hi = x >> h, lo = x & mask;
        // Input adders: h-bit operands, (h + 1)-bit sum.
        checks += 2;
        bad += (hi >> h) != 0;
        bad += ((hi + lo) >> (h + 1)) != 0;
        s[0].push_back(hi);
        s[1].push_back(hi + lo);
        s[2].push_back(lo);
      }
      return s;
    };
    const auto as = slices(a);
    const auto bs = slices(b);
    const auto c1 = run(plan.children[0], as[0], bs[0], rows_, kk, nn);
    const auto cs = run(plan.children[1], as[1], bs[1], rows_, kk, nn);
    const auto c0 = run(plan.children[2], as[2], bs[2], rows_, kk, nn);

    const unsigned wa = ceil_log2(cfg.X);
    const unsigned mid_w = 2 * h + 4 + wa;
    const unsigned wide = 2 * w + wa;
    std::vector<BigInt> c(c1.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      BigInt mid = cs[i] - c1[i];
      checks += 4;
      bad += !fits_signed(mid, mid_w);
      mid -= c0[i];
      bad += !fits_signed(mid, mid_w);
      BigInt v = (c1[i] << (2 * h)) + (mid << h);
      bad += !fits_unsigned(v, wide);
      v += c0[i];
      bad += !fits_unsigned(v, wide);
      c[i] = std::move(v);
    }
    return c;
  }
};

}  // namespace

SimResult simulate_mm1_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                           unsigned w_in, const SimOptions& opts) {
  if (cfg.variant != Variant::BaselineMM1) {
    throw ConfigError(std::string("simulate_mm1_mxu called with variant ") +
                      to_string(cfg.variant));
  }
  const Plan plan = plan_for(cfg, w_in);
  return run_single_array(cfg, a, b, w_in, make_schedule(PsMode::MM, cfg.w_m), plan, opts);
}

SimResult simulate_ps_kmm_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                              unsigned w_in, const SimOptions& opts) {
  if (cfg.variant != Variant::PrecisionScalableKMM &&
      cfg.variant != Variant::PrecisionScalableMM2) {
    throw ConfigError(std::string("simulate_ps_kmm_mxu called with variant ") +
                      to_string(cfg.variant));
  }
  const Plan plan = plan_for(cfg, w_in);
  const PsMode mode =
      select_ps_mode(w_in, cfg.w_m, cfg.variant == Variant::PrecisionScalableKMM);
  return run_single_array(cfg, a, b, w_in, make_schedule(mode, cfg.w_m), plan, opts);
}

SimResult simulate_fixed_kmm_mxu(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b,
                                 unsigned w_in, const SimOptions& opts) {
  if (cfg.variant != Variant::FixedKMM) {
    throw ConfigError(std::string("simulate_fixed_kmm_mxu called with variant ") +
                      to_string(cfg.variant));
  }
  const Plan plan = plan_for(cfg, w_in);
  if (a.cols() != b.rows()) {
    throw DimensionError("inner dimensions differ: A has " + std::to_string(a.cols()) +
                         " columns, B has " + std::to_string(b.rows()) + " rows");
  }
  const Dims d{a.rows(), a.cols(), b.cols()};
  const auto aw = to_words(a, w_in, "A");
  const auto bw = to_words(b, w_in, "B");
  const TileGrid g{d.M, d.K, d.N, cfg.X, cfg.Y};
  const RecursionPlan tree = uniform_plan(1u << plan.r, w_in);
  const unsigned acc_width = product_width(w_in, w_in, d.K);

  std::vector<BigInt> ext(d.M * d.N);
  KmmTreeRun runner{cfg, opts.kernel};
  std::uint64_t ext_bad = 0;
  PassTrace trace = run_pass(
      "C", g, cfg.latency(),
      [&](std::size_t m0, std::size_t rows, std::size_t kt, std::size_t nt) {
        const std::size_t k0 = kt * cfg.X, n0 = nt * cfg.Y;
        const std::size_t kk = g.k_valid(kt), nn = std::min<std::size_t>(cfg.Y, d.N - n0);
        std::vector<std::uint64_t> at(rows * kk), bt(kk * nn);
        for (std::size_t i = 0; i < rows; ++i) {
          std::copy_n(aw.data() + (m0 + i) * d.K + k0, kk, at.data() + i * kk);
        }
        for (std::size_t k = 0; k < kk; ++k) {
          std::copy_n(bw.data() + (k0 + k) * d.N + n0, nn, bt.data() + k * nn);
        }
        runner.rows = 0;
        const auto c = runner.run(tree, at, bt, rows, kk, nn);
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < nn; ++j) {
            BigInt& acc = ext[(m0 + i) * d.N + n0 + j];
            acc += c[i * nn + j];
            ++runner.checks;
            ext_bad += !fits_unsigned(acc, acc_width);
          }
        }
        return runner.rows;
      });
  check_violations(runner.bad + ext_bad, "the Karatsuba array tree");

  UMatrix product(d.M, d.N, acc_width, std::move(ext));
  std::vector<PassTrace> passes{std::move(trace)};
  return {std::move(product), finish_report(cfg, plan, d, w_in, std::move(passes), runner.checks)};
}

SimResult gemm_driver(const MxuConfig& cfg, const UMatrix& a, const UMatrix& b, unsigned w_in,
                      const SimOptions& opts) {
  switch (cfg.variant) {
    case Variant::BaselineMM1:
      return simulate_mm1_mxu(cfg, a, b, w_in, opts);
    case Variant::FixedKMM:
      return simulate_fixed_kmm_mxu(cfg, a, b, w_in, opts);
    case Variant::PrecisionScalableKMM:
    case Variant::PrecisionScalableMM2:
      return simulate_ps_kmm_mxu(cfg, a, b, w_in, opts);
  }
  throw ConfigError("unknown variant");
}

SimReport gemm_timing(const MxuConfig& cfg, const Dims& dims, unsigned w_in) {
  validate_dims(dims);
  const Plan plan = plan_for(cfg, w_in);
  const TileGrid g{dims.M, dims.K, dims.N, cfg.X, cfg.Y};
  std::vector<PassTrace> passes;
  for (const auto& label : plan.pass_labels) {
    passes.push_back(timing_pass(label, g, cfg.latency()));
  }
  return finish_report(cfg, plan, dims, w_in, std::move(passes), 0);
}

std::string csv_header() { return "variant,w_in,w_m,X,Y,M,K,N,mode,reads,cycles,efficiency\n"; }

std::string csv_row(const SimReport& r) {
  std::ostringstream os;
  os << to_string(r.variant) << "," << r.w_in << "," << r.w_m << "," << r.X << "," << r.Y << ","
     << r.dims.M << "," << r.dims.K << "," << r.dims.N << "," << r.mode << "," << r.reads << ","
     << r.total_cycles << "," << format_number(r.efficiency) << "\n";
  return os.str();
}

std::string summary(const SimReport& r) {
  std::ostringstream os;
  os << "variant " << to_string(r.variant) << ", mode " << r.mode << " (" << r.reads
     << " read" << (r.reads == 1 ? "" : "s") << " per tile, r=" << r.r << ")\n"
     << "array " << r.X << "x" << r.Y << " of w_m=" << r.w_m << ", " << r.multipliers
     << " multipliers; inputs w_in=" << r.w_in << ", GEMM " << format_dims(r.dims) << "\n"
     << "cycles " << r.total_cycles << " (steady " << r.steady_cycles << "), tile steps "
     << r.tile_steps << "\n"
     << "effective mults " << r.effective_win_mults << ", base mults " << r.base_mults_performed
     << "\n"
     << "efficiency " << format_number(r.efficiency) << " (steady "
     << format_number(r.steady_efficiency) << ")\n";
  for (const auto& p : r.passes) {
    os << "  pass " << p.label << ": " << p.cycles << " cycles, " << p.tile_steps
       << " tile steps\n";
  }
  if (r.width_checks != 0) {
    os << "width checks " << r.width_checks << ", all within declared widths\n";
  }
  return os.str();
}

}  // namespace kmm::sim
