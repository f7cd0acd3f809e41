//
// Copyright 2026 The kmm Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kmm/bitmat.hpp"
#include "kmm/cli/commands.hpp"
#include "kmm/matrix_io.hpp"
#include "kmm/oracle.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace kmm::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kmm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, MultiplyKmmHexExample) {
  RunSpec s;
  s.alg = "kmm";
  s.n = 2;
  s.a_path = file("a.txt", "1 1 8\n12\n");
  s.b_path = file("b.txt", "1 1 8\n10\n");
  s.out = (dir_ / "c.txt").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_multiply(s, out, err), 0) << err.str();
  auto c = read_matrix_file(*s.out);
  EXPECT_EQ(c.at(0, 0), 0x120);
  EXPECT_NE(slurp(*s.out).find("120"), std::string::npos);
  EXPECT_NE(out.str().find("mults"), std::string::npos);
}

TEST_F(CliTest, MultiplyIdentity) {
  auto b = random_matrix(4, 4, 8, 3);
  RunSpec s;
  s.alg = "mm1";
  s.a_path = file("a.txt", format_matrix(UMatrix::identity(4, 8)));
  s.b_path = file("b.txt", format_matrix(b));
  std::ostringstream out, err;
  ASSERT_EQ(run_multiply(s, out, err), 0) << err.str();
  EXPECT_TRUE(matrices_equal(parse_matrix(out.str()), b));
}

TEST_F(CliTest, MultiplyEveryAlgorithm) {
  auto a = random_matrix(3, 3, 16, 1), b = random_matrix(3, 3, 16, 2);
  for (const char* alg : {"mm1", "mmn", "kmm", "ksmm"}) {
    RunSpec s;
    s.alg = alg;
    s.n = 4;
    s.a_path = file("a.txt", format_matrix(a));
    s.b_path = file("b.txt", format_matrix(b));
    std::ostringstream out, err;
    ASSERT_EQ(run_multiply(s, out, err), 0) << alg << err.str();
    EXPECT_TRUE(matrices_equal(parse_matrix(out.str()), naive_matmul(a, b))) << alg;
  }
  for (const char* alg : {"sm", "ksm"}) {
    RunSpec s;
    s.alg = alg;
    s.n = 2;
    s.a_path = file("a.txt", "1 1 8\nff\n");
    s.b_path = file("b.txt", "1 1 8\nff\n");
    std::ostringstream out, err;
    ASSERT_EQ(run_multiply(s, out, err), 0) << alg << err.str();
    EXPECT_EQ(parse_matrix(out.str()).at(0, 0), 0xFE01);
  }
}

TEST_F(CliTest, MultiplyErrors) {
  std::ostringstream out, err;
  RunSpec s;
  s.alg = "mmn";
  s.a_path = file("a.txt", "2 3 8\n1 2 3\n4 5 6\n");
  s.b_path = file("b.txt", "2 2 8\n1 2\n3 4\n");
  EXPECT_EQ(run_multiply(s, out, err), 2);
  EXPECT_NE(err.str().find("dimension"), std::string::npos);

  s.b_path = file("b.txt", "1 1 4\n1f\n");
  err.str("");
  EXPECT_EQ(run_multiply(s, out, err), 2);
  EXPECT_NE(err.str().find("range"), std::string::npos);

  s.b_path = file("b.txt", "garbage\n");
  EXPECT_EQ(run_multiply(s, out, err), 2);

  s.b_path = (dir_ / "missing.txt").string();
  EXPECT_EQ(run_multiply(s, out, err), 2);

  s.alg = "bogus";
  s.b_path = s.a_path;
  EXPECT_EQ(run_multiply(s, out, err), 2);

  s.alg = "sm";
  s.a_path = file("a.txt", "1 1 8\n1\n");
  s.b_path = s.a_path;
  s.n = 3;
  EXPECT_EQ(run_multiply(s, out, err), 2);
}

TEST_F(CliTest, VerifyDefaultGridPasses) {
  RunSpec s;
  std::ostringstream out, err;
  ASSERT_EQ(run_verify(s, out, err), 0) << err.str();
  EXPECT_NE(out.str().find(" 0 failed"), std::string::npos);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyZeroRepsIsFormulaOnly) {
  RunSpec s;
  s.reps = 0;
  std::ostringstream out, err;
  EXPECT_EQ(run_verify(s, out, err), 0);
  EXPECT_NE(out.str().find("skip"), std::string::npos);
}

TEST_F(CliTest, VerifyInjectedFaultFails) {
  RunSpec s;
  s.inject_fault = true;
  s.reps = 1;
  std::ostringstream out, err;
  EXPECT_EQ(run_verify(s, out, err), 1);
  EXPECT_NE(out.str().find("first difference"), std::string::npos);
  EXPECT_NE(err.str().find("mults["), std::string::npos);
}

TEST_F(CliTest, ModelFiles) {
  RunSpec s;
  s.out = (dir_ / "curves").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_model(s, out, err), 0);
  auto arith = slurp(dir_ / "curves" / "arith_counts.csv");
  EXPECT_NE(arith.find("2,MM,2117632,1.31887"), std::string::npos);
  EXPECT_NE(arith.find("2,KSMM,3145728,1.95918"), std::string::npos);
  auto roofs = slurp(dir_ / "curves" / "multiplier_roofs.csv");
  EXPECT_NE(roofs.find("14,KMM2,1.33333333333333"), std::string::npos);
  EXPECT_NE(roofs.find("15,KMM2,1\n"), std::string::npos);
  auto area = slurp(dir_ / "curves" / "area_roofs.csv");
  EXPECT_EQ(area.rfind("w_in,alg,relative_roof,levels\n", 0), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "curves" / "area_roofs.csv"));
}

TEST_F(CliTest, SimulateFromConfig) {
  RunSpec s;
  s.config_path = file("sim.cfg", "variant = ps-kmm\nX = 16\nY = 16\nw_m = 8\nw_in = 12\n"
                                  "dims = 48x40x33\nseed = 4\n");
  std::ostringstream out, err;
  ASSERT_EQ(run_simulate(s, out, err), 0) << err.str();
  EXPECT_EQ(out.str().rfind("variant,w_in,w_m,X,Y,M,K,N,mode,reads,cycles,efficiency\n"
                            "ps-kmm,12,8,16,16,48,40,33,KMM2,3,",
                            0),
            0u)
      << out.str();
}

TEST_F(CliTest, SimulateErrors) {
  std::ostringstream out, err;
  RunSpec s;
  s.variant = "ps-kmm";
  s.w_in = 17;
  s.dims = "8x8x8";
  EXPECT_EQ(run_simulate(s, out, err), 2);
  s.w_in = 8;
  s.variant = "fixed-kmm";
  EXPECT_EQ(run_simulate(s, out, err), 2);
  s.variant = "nope";
  EXPECT_EQ(run_simulate(s, out, err), 2);
  s.variant = "baseline";
  s.dims = "8x8";
  EXPECT_EQ(run_simulate(s, out, err), 2);
  s.dims.reset();
  s.config_path = file("bad.cfg", "colour = blue\n");
  EXPECT_EQ(run_simulate(s, out, err), 2);
}

TEST_F(CliTest, Deterministic) {
  auto twice = [](auto fn, RunSpec s) {
    std::ostringstream o1, o2, e1, e2;
    EXPECT_EQ(fn(s, o1, e1), 0);
    EXPECT_EQ(fn(s, o2, e2), 0);
    EXPECT_EQ(o1.str(), o2.str());
    EXPECT_EQ(e1.str(), e2.str());
    return o1.str();
  };
  RunSpec v;
  v.seed = 17;
  v.reps = 1;
  auto a = twice(run_verify, v);
  twice(run_model, RunSpec{});
  RunSpec sim;
  sim.variant = "ps-kmm";
  sim.dims = "40x30x20";
  sim.w_in = 11;
  sim.X = 8;
  sim.Y = 8;
  sim.seed = 3;
  twice(run_simulate, sim);
  v.seed = 18;
  std::ostringstream o, e;
  run_verify(v, o, e);
  EXPECT_EQ(o.str(), a);  // report content does not depend on the data
}

}  // namespace
}  // namespace kmm::cli
