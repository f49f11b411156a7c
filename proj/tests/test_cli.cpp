#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("bn_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int bn(const std::string& args) const {
    const std::string cmd = std::string(BN_CLI_PATH) + " " + args + " > " + (dir_ / "stdout").string() + " 2> " +
                            (dir_ / "stderr").string();
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static int line_count(const std::string& p) {
    std::ifstream is(p);
    int n = 0;
    for (std::string line; std::getline(is, line);) ++n;
    return n;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p);
    return {std::istreambuf_iterator<char>(is), {}};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, NoArgumentsIsUsageError) { EXPECT_EQ(bn(""), 2); }

TEST_F(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(bn("run --case 1 --out x.csv --bogus"), 2); }

TEST_F(Cli, OutOfRangeCaseIsUsageError) { EXPECT_EQ(bn("exact --case 9 --out " + path("e.csv")), 2); }

TEST_F(Cli, RunWritesProfile) {
  ASSERT_EQ(bn("run --case 1 --scheme relax --cells 100 --out " + path("r.csv")), 0) << slurp(path("stderr"));
  EXPECT_EQ(line_count(path("r.csv")), 101);
  const auto out = slurp(path("stdout"));
  EXPECT_EQ(out.find(" 0 steps"), std::string::npos) << out;
}

TEST_F(Cli, RunWithLog) {
  ASSERT_EQ(bn("run --case 2 --cells 50 --out " + path("r.csv") + " --log " + path("log.csv")), 0);
  EXPECT_GT(line_count(path("log.csv")), 2);
}

TEST_F(Cli, RunFromConfig) {
  std::ofstream(path("case.json")) << R"({
    "eos1": {"gamma": 1.4, "p_inf": 0}, "eos2": {"gamma": 1.4, "p_inf": 0},
    "domain": [-0.5, 0.5], "x0": 0, "t_max": 0.05, "cfl": 0.4,
    "left":  {"alpha1": 0.3, "rho1": 1, "u1": 0, "p1": 1, "rho2": 1, "u2": 0, "p2": 1},
    "right": {"alpha1": 0.7, "rho1": 0.5, "u1": 0, "p1": 0.5, "rho2": 0.5, "u2": 0, "p2": 0.5}})";
  ASSERT_EQ(bn("run --config " + path("case.json") + " --cells 40 --out " + path("r.csv")), 0)
      << slurp(path("stderr"));
  EXPECT_EQ(line_count(path("r.csv")), 41);
}

TEST_F(Cli, BadConfigIsRuntimeError) {
  std::ofstream(path("case.json")) << R"({"eos1": {"gamma": 1.4, "p_inf": 0}})";
  EXPECT_EQ(bn("run --config " + path("case.json") + " --out " + path("r.csv")), 1);
  EXPECT_NE(slurp(path("stderr")).find("eos2"), std::string::npos);
}

TEST_F(Cli, ExactWritesProfile) {
  ASSERT_EQ(bn("exact --case 3 --cells 1000 --out " + path("e.csv")), 0);
  EXPECT_EQ(line_count(path("e.csv")), 1001);
}

TEST_F(Cli, SolverFailureExitsOne) {
  EXPECT_EQ(bn("run --case 5 --scheme rusanov --cells 100 --out " + path("r.csv")), 1);
  EXPECT_FALSE(slurp(path("stderr")).empty());
}

TEST_F(Cli, ConvergenceAndBench) {
  ASSERT_EQ(bn("convergence --case 1 --levels 2 --out " + path("c.csv")), 0);
  EXPECT_EQ(line_count(path("c.csv")), 3);
  ASSERT_EQ(bn("bench --case 1 --levels 2 --out " + path("b.csv")), 0);
  EXPECT_EQ(line_count(path("b.csv")), 5);
}
