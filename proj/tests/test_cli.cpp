// Copyright 2026 The nnest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nnest/estimator.hpp"
#include "nnest/rbm.hpp"
#include "nnest/random.hpp"

using namespace nnest;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nnest_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "h.txt") << "-1 XX\n-1 ZZ\n";
    std::ofstream(dir_ / "run.conf") << "observable = " << (dir_ / "h.txt").string()
                                     << "\nseed = 17\nmeasurements = 600\nepochs = 3\n"
                                        "chains = 4\nburn_in = 10\nselection_n_mc = 300\n"
                                        "checkpoint_pool = 3\nn_mc = 2000\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary with stdout and stderr captured; returns the exit code.
  int run(const std::string &args) {
    const std::string cmd = std::string(NNEST_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    stdout_ = slurp(dir_ / "stdout");
    stderr_ = slurp(dir_ / "stderr");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string conf() const { return "-c " + (dir_ / "run.conf").string(); }
  std::string out(const std::string &name) const { return "--set output_dir=" + (dir_ / name).string(); }

  fs::path dir_;
  std::string stdout_, stderr_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("gen-data " + conf() + " --set bogus_key=1"), 2);
  EXPECT_NE(stderr_.find("bogus_key"), std::string::npos) << stderr_;
  EXPECT_EQ(run("gen-data " + conf() + " --set observable=/nonexistent"), 2);
  EXPECT_EQ(run("gen-data -c " + (dir_ / "missing.conf").string()), 2);
  EXPECT_EQ(run("gen-data --set seed=1"), 2);
  EXPECT_EQ(run("train " + conf() + " --set learning_rate=-1"), 2);
  EXPECT_EQ(run("gen-data --help"), 0);
}

TEST_F(Cli, RuntimeErrorsExitThree) {
  std::ofstream(dir_ / "bad.txt") << "qubits 2\nXZ 0\n";
  EXPECT_EQ(run("train " + conf() + " --set dataset=" + (dir_ / "bad.txt").string() + " " + out("o")), 3);
  EXPECT_NE(stderr_.find("line 2"), std::string::npos) << stderr_;
  std::ofstream(dir_ / "h3.txt") << "1 ZZZ\n";
  EXPECT_EQ(run("gen-data " + conf() + " " + out("d")), 0);
  EXPECT_EQ(run("estimate " + conf() + " --set estimate_method=standard --set dataset=" +
                (dir_ / "d" / "dataset.txt").string() + " --set observable=" + (dir_ / "h3.txt").string()),
            3);
}

TEST_F(Cli, PipelineAndEstimateMatchesLibrary) {
  ASSERT_EQ(run("gen-data " + conf() + " " + out("a")), 0) << stderr_;
  EXPECT_NE(stdout_.find("records 600"), std::string::npos) << stdout_;
  ASSERT_EQ(stdout_.rfind("ground_energy ", 0), 0u) << stdout_;
  EXPECT_NEAR(std::stod(stdout_.substr(14)), -2.0, 1e-12);
  const auto data = (dir_ / "a" / "dataset.txt").string();
  ASSERT_EQ(run("train " + conf() + " --set dataset=" + data + " " + out("a")), 0) << stderr_;
  EXPECT_TRUE(fs::exists(dir_ / "a" / "model.rbm"));
  EXPECT_TRUE(fs::exists(dir_ / "a" / "train_log.txt"));
  EXPECT_NE(stdout_.find("selected_epoch"), std::string::npos);

  const auto model = (dir_ / "a" / "model.rbm").string();
  ASSERT_EQ(run("estimate " + conf() + " --set checkpoint=" + model + " " + out("a")), 0) << stderr_;
  const std::string csv = slurp(dir_ / "a" / "estimate.csv");
  EXPECT_EQ(csv.rfind("method,mean,variance,std_error,n_samples,imag_mean,imag_std_error\nnn,", 0), 0u) << csv;

  SamplerConfig sc = SamplerConfig::linear_ladder(4);
  sc.sweeps_burn_in = 10;
  sc.seed = 17;
  const auto lib = nn_estimate(load_params(model), Observable::load(dir_ / "h.txt"), 2000, sc);
  std::istringstream row(csv.substr(csv.find('\n') + 1));
  std::string method;
  double mean = 0.0;
  std::getline(row, method, ',');
  row >> mean;
  EXPECT_NEAR(mean, lib.mean, 1e-12 * std::max(1.0, std::abs(lib.mean)));

  ASSERT_EQ(run("estimate " + conf() + " --set estimate_method=standard --set dataset=" + data + " " + out("b")),
            0)
      << stderr_;
  EXPECT_EQ(slurp(dir_ / "b" / "estimate.csv").find("\nstandard,"),
            std::string("method,mean,variance,std_error,n_samples,imag_mean,imag_std_error").size());
}

TEST_F(Cli, CompareWritesTables) {
  ASSERT_EQ(run("compare " + conf() + " --set budgets=400,200 --set replicates=2 " + out("c")), 0) << stderr_;
  const std::string csv = slurp(dir_ / "c" / "compare.csv");
  EXPECT_EQ(csv.rfind("M,nn_mean,nn_var,qc_mean,qc_eps2,eps2_max,p_nn,p_qc\n200,", 0), 0u) << csv;
  EXPECT_NE(csv.find("\n400,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "c" / "histogram_M200.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "c" / "histogram_M400.csv"));
  EXPECT_EQ(run("compare " + conf() + " --set replicates=2"), 2);
}

TEST_F(Cli, ConvertCounts) {
  std::ofstream(dir_ / "counts.txt") << "qubits 2\ncounts\nXX 00 3\nZI 01 2\n";
  ASSERT_EQ(run("convert-counts --set counts=" + (dir_ / "counts.txt").string() + " " + out("v")), 0) << stderr_;
  EXPECT_EQ(slurp(dir_ / "v" / "dataset.txt"), "qubits 2\nXX 00\nXX 00\nXX 00\nZZ 01\nZZ 01\n");
  EXPECT_NE(stdout_.find("records 5"), std::string::npos);
}

TEST_F(Cli, IdenticalSeedsGiveIdenticalBytes) {
  for (const char *o : {"r1", "r2"}) {
    ASSERT_EQ(run("gen-data " + conf() + " " + out(o)), 0);
    const auto data = (dir_ / o / "dataset.txt").string();
    ASSERT_EQ(run("train " + conf() + " --set dataset=" + data + " " + out(o)), 0);
    ASSERT_EQ(run("estimate " + conf() + " --set checkpoint=" + (dir_ / o / "model.rbm").string() + " " + out(o)),
              0);
    ASSERT_EQ(run("compare " + conf() + " --set budgets=200 --set replicates=2 " + out(o)), 0);
  }
  for (const char *f : {"dataset.txt", "model.rbm", "train_log.txt", "estimate.csv", "compare.csv",
                        "histogram_M200.csv"}) {
    const std::string a = slurp(dir_ / "r1" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir_ / "r2" / f)) << f;
  }
  ASSERT_EQ(run("gen-data " + conf() + " --set seed=18 " + out("r3")), 0);
  EXPECT_NE(slurp(dir_ / "r1" / "dataset.txt"), slurp(dir_ / "r3" / "dataset.txt"));
}
