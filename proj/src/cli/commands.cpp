//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/cli/commands.hpp"

#include "kmm/algorithms.hpp"
#include "kmm/complexity.hpp"
#include "kmm/curves.hpp"
#include "kmm/errors.hpp"
#include "kmm/matrix_io.hpp"
#include "kmm/oracle.hpp"
#include "kmm/sim/simulator.hpp"

#include <filesystem>
#include <functional>
#include <sstream>
#include <vector>

namespace kmm::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InvalidSplitError*>(&e)) return "invalid split";
  if (dynamic_cast<const DimensionError*>(&e)) return "dimension mismatch";
  if (dynamic_cast<const RangeError*>(&e)) return "value out of range";
  if (dynamic_cast<const WidthError*>(&e)) return "unsupported width";
  if (dynamic_cast<const ConfigError*>(&e)) return "invalid configuration";
  if (dynamic_cast<const ParseError*>(&e)) return "parse error";
  if (dynamic_cast<const WidthViolation*>(&e)) return "datapath width violation";
  return "error";
}

// Runs `body`, mapping library errors onto exit statuses.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const WidthViolation& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

void emit(const RunSpec& spec, std::ostream& out, const std::string& text) {
  if (spec.out) {
    write_file_atomic(*spec.out, text);
  } else {
    out << text;
  }
}

KsmTail tail_of(const RunSpec& spec) {
  return spec.concatenated_tail ? KsmTail::Concatenated : KsmTail::Added;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"sm", "ksm", "mm1", "mmn", "ksmm", "kmm"};
  return names;
}

void check_alg(const std::string& alg) {
  for (const auto& a : algorithm_names()) {
    if (a == alg) {
      return;
    }
  }
  throw ConfigError("unknown algorithm '" + alg + "' (expected sm, ksm, mm1, mmn, ksmm or kmm)");
}

bool scalar_alg(const std::string& alg) { return alg == "sm" || alg == "ksm"; }

MatrixResult run_matrix_alg(const std::string& alg, const UMatrix& a, const UMatrix& b,
                            const DigitParams& params) {
  if (alg == "mm1") return mm1(a.with_width(params.w), b.with_width(params.w), params.p);
  if (alg == "mmn") return mm_n(a, b, params);
  if (alg == "ksmm") return ksmm_n(a, b, params);
  return kmm_n(a, b, params);
}

ScalarResult run_scalar_alg(const std::string& alg, const BigInt& a, const BigInt& b,
                            const DigitParams& params) {
  return alg == "sm" ? sm_n(a, b, params) : ksm_n(a, b, params);
}

OpBreakdown predicted(const std::string& alg, const DigitParams& params, std::uint64_t d) {
  if (alg == "sm") return complexity_sm_n(params.n, params.w);
  if (alg == "ksm") return complexity_ksm_n(params.n, params.w, params.tail);
  if (alg == "mm1") return complexity_mm1(params.w, d, params.p);
  if (alg == "mmn") return complexity_mm_n(params.n, params.w, d, params.p);
  if (alg == "ksmm") return complexity_ksmm_n(params.n, params.w, d, params.tail);
  return complexity_kmm_n(params.n, params.w, d, params.p);
}

}  // namespace

int run_multiply(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!spec.a_path || !spec.b_path) {
      throw ConfigError("multiply needs --a and --b matrix files");
    }
    const std::string alg = spec.alg.value_or("kmm");
    check_alg(alg);
    const UMatrix a = read_matrix_file(*spec.a_path);
    const UMatrix b = read_matrix_file(*spec.b_path);
    DigitParams params;
    params.n = alg == "mm1" ? 1 : spec.n.value_or(2);
    params.w = spec.w_in.value_or(std::max(a.width(), b.width()));
    params.p = spec.p.value_or(4);
    params.tail = tail_of(spec);
    validate(params);

    UMatrix product(1, 1, 1);
    OpCounter counts;
    if (scalar_alg(alg)) {
      if (a.rows() != 1 || a.cols() != 1 || b.rows() != 1 || b.cols() != 1) {
        throw DimensionError("scalar algorithm " + alg + " takes 1x1 matrices");
      }
      ScalarResult r = run_scalar_alg(alg, a.at(0, 0), b.at(0, 0), params);
      product = UMatrix(1, 1, 2 * params.w, {r.value});
      counts = std::move(r.counts);
    } else {
      MatrixResult r = run_matrix_alg(alg, a, b, params);
      product = std::move(r.value);
      counts = std::move(r.counts);
    }
    const std::string text = format_matrix(product);
    if (spec.out) {
      write_file_atomic(*spec.out, text);
      out << summarize(counts);
    } else {
      out << text;
      err << summarize(counts);
    }
    return kOk;
  });
}

int run_verify(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<unsigned> ns =
        spec.n ? std::vector<unsigned>{*spec.n} : std::vector<unsigned>{1, 2, 4};
    const std::vector<unsigned> ws =
        spec.w_in ? std::vector<unsigned>{*spec.w_in} : std::vector<unsigned>{8, 16, 32};
    const std::vector<std::uint64_t> ds{2, 4, 8};
    std::vector<std::string> algs = algorithm_names();
    if (spec.alg) {
      check_alg(*spec.alg);
      algs = {*spec.alg};
    }
    const unsigned reps = spec.reps.value_or(3);
    const std::uint64_t seed = spec.seed.value_or(1);

    std::ostringstream report;
    report << "alg,n,w,d,reps,oracle,counts\n";
    std::size_t points = 0, failures = 0;
    std::optional<std::string> first_failure;
    bool fault_pending = spec.inject_fault;
    std::uint64_t instance = 0;

    for (const auto& alg : algs) {
      for (unsigned n : ns) {
        if (alg == "mm1" && n != 1) continue;
        for (unsigned w : ws) {
          if (n > w) continue;
          for (std::uint64_t d : ds) {
            if (scalar_alg(alg) && d != ds.front()) continue;
            DigitParams params;
            params.n = n;
            params.w = w;
            params.p = spec.p.value_or(4);
            params.tail = tail_of(spec);
            OpBreakdown expect = predicted(alg, params, d);
            if (fault_pending) {
              expect.ops.mults[w] += 1;
              fault_pending = false;
            }
            bool oracle_ok = true, counts_ok = true;
            std::string where = alg + " n=" + std::to_string(n) + " w=" + std::to_string(w) +
                                (scalar_alg(alg) ? "" : " d=" + std::to_string(d));
            for (unsigned i = 0; i < reps; ++i) {
              const std::uint64_t s = seed * 1000003u + instance++;
              OpCounter got;
              try {
                if (scalar_alg(alg)) {
                  const BigInt a = random_value(w, s);
                  const BigInt b = random_value(w, s ^ 0x5bd1e995u);
                  ScalarResult r = run_scalar_alg(alg, a, b, params);
                  oracle_ok = oracle_ok && r.value == a * b;
                  got = std::move(r.counts);
                } else {
                  const UMatrix a = random_matrix(d, d, w, s);
                  const UMatrix b = random_matrix(d, d, w, s ^ 0x5bd1e995u);
                  MatrixResult r = run_matrix_alg(alg, a, b, params);
                  oracle_ok = oracle_ok && matrices_equal(r.value, naive_matmul(a, b));
                  got = std::move(r.counts);
                }
              } catch (const WidthViolation& e) {
                oracle_ok = false;
                if (!first_failure) first_failure = where + ": " + e.what();
                continue;
              }
              if (auto diff = first_difference(got, expect.ops)) {
                counts_ok = false;
                if (!first_failure) first_failure = where + ": " + *diff;
              }
            }
            if (!oracle_ok && !first_failure) first_failure = where + ": product differs from oracle";
            ++points;
            failures += !(oracle_ok && counts_ok);
            const char* o = reps == 0 ? "skip" : oracle_ok ? "pass" : "FAIL";
            const char* c = reps == 0 ? "skip" : counts_ok ? "pass" : "FAIL";
            report << alg << "," << n << "," << w << "," << (scalar_alg(alg) ? 1 : d) << ","
                   << reps << "," << o << "," << c << "\n";
          }
        }
      }
    }
    report << "# " << points << " grid points, " << failures << " failed\n";
    if (first_failure) {
      report << "# first difference: " << *first_failure << "\n";
    }
    emit(spec, out, report.str());
    if (failures != 0) {
      err << "verify failed: " << *first_failure << "\n";
      return kCheckFailed;
    }
    return kOk;
  });
}

int run_model(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<std::pair<std::string, std::string>> files{
        {"arith_counts.csv", arith_count_csv(64, 64)},
        {"multiplier_roofs.csv", multiplier_roof_csv(spec.w_m.value_or(8))},
        {"area_roofs.csv", area_roof_csv(spec.X.value_or(64), spec.Y.value_or(64),
                                         spec.p.value_or(4), spec.min_width.value_or(4))},
    };
    if (spec.out) {
      const std::filesystem::path dir(*spec.out);
      std::filesystem::create_directories(dir);
      for (const auto& [name, text] : files) {
        write_file_atomic(dir / name, text);
        out << "wrote " << (dir / name).string() << "\n";
      }
    } else {
      for (const auto& [name, text] : files) {
        out << "# " << name << "\n" << text;
      }
    }
    return kOk;
  });
}

int run_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    sim::SimSpec s = spec.config_path ? sim::read_sim_config(*spec.config_path) : sim::SimSpec{};
    if (spec.variant) s.mxu.variant = sim::parse_variant(*spec.variant);
    if (spec.X) s.mxu.X = *spec.X;
    if (spec.Y) s.mxu.Y = *spec.Y;
    if (spec.w_m) s.mxu.w_m = *spec.w_m;
    if (spec.p) s.mxu.p = *spec.p;
    if (spec.latency) s.mxu.pipeline_latency = *spec.latency;
    if (spec.w_in) s.w_in = *spec.w_in;
    if (spec.dims) s.dims = sim::parse_dims(*spec.dims);
    if (spec.seed) s.seed = *spec.seed;
    s.mxu.validate();

    sim::SimReport report;
    if (spec.timing_only) {
      report = sim::gemm_timing(s.mxu, s.dims, s.w_in);
    } else {
      const UMatrix a = random_matrix(s.dims.M, s.dims.K, s.w_in, s.seed);
      const UMatrix b = random_matrix(s.dims.K, s.dims.N, s.w_in, s.seed + 1);
      sim::SimResult r = sim::gemm_driver(s.mxu, a, b, s.w_in);
      if (!spec.no_check && !matrices_equal(r.product, naive_matmul_parallel(a, b))) {
        err << "error: simulated product differs from the reference product\n";
        return kCheckFailed;
      }
      report = std::move(r.report);
    }
    const std::string csv = sim::csv_header() + sim::csv_row(report);
    if (spec.out) {
      write_file_atomic(*spec.out, csv);
      out << sim::summary(report);
    } else {
      out << csv;
      err << sim::summary(report);
    }
    return kOk;
  });
}

}  // namespace kmm::cli
