//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

template <class T>
void opt(CLI::App* app, const std::string& name, std::optional<T>& target,
         const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  kmm::cli::RunSpec spec;
  CLI::App app{"Karatsuba matrix multiplication toolkit"};
  app.require_subcommand(1);

  auto* multiply = app.add_subcommand("multiply", "Multiply two matrix files");
  auto* verify = app.add_subcommand("verify", "Check products and operation counts on a grid");
  auto* model = app.add_subcommand("model", "Emit complexity, roof and area CSV curves");
  auto* simulate = app.add_subcommand("simulate", "Run a GEMM through the array simulator");

  for (auto* sub : {multiply, verify}) {
    opt(sub, "--alg", spec.alg, "sm, ksm, mm1, mmn, ksmm or kmm");
    opt(sub, "--n", spec.n, "Digit count (power of two)");
    opt(sub, "--w-in", spec.w_in, "Operand width in bits");
    opt(sub, "--p", spec.p, "Products pre-summed per wide accumulation");
    sub->add_flag("--concat-tail", spec.concatenated_tail,
                  "Count the final Karatsuba scalar add as wiring");
  }
  opt(multiply, "--a", spec.a_path, "Left matrix file");
  opt(multiply, "--b", spec.b_path, "Right matrix file");

  opt(verify, "--seed", spec.seed, "Base seed");
  opt(verify, "--reps", spec.reps, "Random instances per grid point (0: formulas only)");
  verify->add_flag("--inject-fault", spec.inject_fault,
                   "Perturb one predicted count to check that mismatches are caught");

  opt(model, "--w-m", spec.w_m, "Multiplier width for the roof curves");
  opt(model, "--x", spec.X, "Array width for the area curves");
  opt(model, "--y", spec.Y, "Array height for the area curves");
  opt(model, "--p", spec.p, "Group size for the area curves");
  opt(model, "--min-width", spec.min_width, "Narrowest unit level selection may split");

  opt(simulate, "--config", spec.config_path, "Key-value config file");
  opt(simulate, "--variant", spec.variant, "baseline, fixed-kmm, ps-kmm or ps-mm2");
  opt(simulate, "--w-in", spec.w_in, "Input width in bits");
  opt(simulate, "--w-m", spec.w_m, "Multiplier width in bits");
  opt(simulate, "--p", spec.p, "Group size");
  opt(simulate, "--x", spec.X, "Array width");
  opt(simulate, "--y", spec.Y, "Array height");
  opt(simulate, "--dims", spec.dims, "GEMM shape MxKxN");
  opt(simulate, "--seed", spec.seed, "Seed for the random operands");
  opt(simulate, "--latency", spec.latency, "Pipeline fill/drain cycles (default X+Y)");
  simulate->add_flag("--no-check", spec.no_check, "Skip the reference product comparison");
  simulate->add_flag("--timing-only", spec.timing_only,
                     "Count cycles without running the datapath");

  for (auto* sub : {multiply, verify, model, simulate}) {
    opt(sub, "--out", spec.out, "Output path (directory for model)");
  }

  CLI11_PARSE(app, argc, argv);

  if (multiply->parsed()) return kmm::cli::run_multiply(spec, std::cout, std::cerr);
  if (verify->parsed()) return kmm::cli::run_verify(spec, std::cout, std::cerr);
  if (model->parsed()) return kmm::cli::run_model(spec, std::cout, std::cerr);
  return kmm::cli::run_simulate(spec, std::cout, std::cerr);
}
