#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "schwarzian/cli.hpp"

using schwarzian::cli::run_cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalExponentialAtZero) {
  const Outcome r = run({"eval", "-f", "exp(z)", "-k", "3", "-z", "0", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("re(z),im(z),re(value),im(value),abs_error\n", 0), 0u);
  EXPECT_NE(r.out.find("0.1111111111111111"), std::string::npos) << r.out;
}

TEST(Cli, JsonSchema) {
  const Outcome r = run({"eval", "-f", "exp(z)", "-k", "2", "-z", "0.5i", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* key : {"\"command\"", "\"config\"", "\"rows\"", "\"summary\"", "\"pass\"",
                          "\"max_error\"", "\"runtime_ms\""}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
}

TEST(Cli, SameSeedGivesIdenticalReports) {
  const std::vector<std::string> args = {"verify", "faa-di-bruno", "-k", "3", "--trials", "10",
                                         "--seed", "5", "--format", "json", "--no-timing"};
  const Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome csv1 = run({"disconjugacy", "-f", "1", "-k", "2", "--trials", "4", "--format", "csv"});
  const Outcome csv2 = run({"disconjugacy", "-f", "1", "-k", "2", "--trials", "4", "--format", "csv"});
  EXPECT_EQ(csv1.out, csv2.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"eval", "-f", "exp(z", "-k", "2", "-z", "0"}).code, 2);
  EXPECT_EQ(run({"eval", "-f", "exp(z)", "-z", "0"}).code, 2);  // no -k
  EXPECT_EQ(run({"eval", "-f", "exp(z)", "-k", "2", "-z", "z"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  // S_2 of z^2 has a pole at its critical point.
  EXPECT_EQ(run({"eval", "-f", "z^2", "-k", "2", "-z", "0"}).code, 1);
  // S_2(z^2 + z) = -3/(2 (z + 1/2)^2) takes the value -3/2 at z = 1/2.
  EXPECT_EQ(run({"omit-check", "-f", "z^2 + z", "-k", "2", "-b", "0 - 1.5", "-z", "0.5"}).code, 1);
}

TEST(Cli, ToleranceOverridesNeedUnsafeToLoosen) {
  const std::vector<std::string> base = {"eval", "-f", "exp(z)", "-k", "3", "-z", "0"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return run(a).code;
  };
  EXPECT_EQ(with({"--tol-rel", "1e-12"}), 0);
  EXPECT_EQ(with({"--tol-rel", "1e-3"}), 2);
  EXPECT_EQ(with({"--tol-rel", "1e-3", "--unsafe"}), 0);
  EXPECT_EQ(run({"verify", "grahl", "--tol", "1"}).code, 2);
}

TEST(Cli, OutWritesFile) {
  const std::string path = ::testing::TempDir() + "schwarzian_cli_out.csv";
  const Outcome r = run({"partitions", "-k", "4", "--format", "csv", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "tuple,parts");
  std::remove(path.c_str());
}

TEST(Cli, BesselCounterexampleStrip) {
  const Outcome r = run({"bessel", "counterexample", "--grid-strip", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
