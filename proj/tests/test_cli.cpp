#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bireg/cli.hpp"
#include "bireg/io.hpp"

using namespace bireg;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const auto start = std::chrono::steady_clock::now();
  Run r;
  r.code = run_cli(args, out, err);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::seconds(5)) << args.front();
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("bireg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, SampleWritesValidFile) {
  const auto r = run({"sample", "--k", "1/1", "--n", "3", "--d", "1", "--method", "pairing",
                      "--seed", "7", "--out", path("g.brg1")});
  ASSERT_EQ(r.code, 0) << r.err;
  const AnyGraph g = read_graph(path("g.brg1"));
  const auto& b = std::get<BipartiteDigraph>(g);
  EXPECT_EQ(b.params().n(), 3);
  const auto stdout_run = run({"sample", "--k", "3/2", "--n", "4", "--d", "2", "--seed", "1"});
  ASSERT_EQ(stdout_run.code, 0);
  EXPECT_EQ(stdout_run.out.rfind("BRG1 3 2 4 2", 0), 0u) << stdout_run.out;
}

TEST_F(CliTest, SampleIsReproducible) {
  const auto a = run({"sample", "--k", "1", "--n", "30", "--d", "5", "--method", "chain",
                      "--seed", "11"});
  const auto b = run({"sample", "--k", "1", "--n", "30", "--d", "5", "--method", "chain",
                      "--seed", "11"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, OmittedSeedIsPrinted) {
  const auto r = run({"sample", "--k", "1", "--n", "5", "--d", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("seed: "), std::string::npos);
  EXPECT_NE(r.out.find("pass --seed to reproduce"), std::string::npos);
}

TEST_F(CliTest, Enumerate) {
  const auto r = run({"enumerate", "--k", "1/1", "--n", "3", "--d", "2", "--out", path("f.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "count: 6\n");
  const auto doc = json::parse(slurp(path("f.json")));
  EXPECT_EQ(doc.at("count"), 6);
  EXPECT_EQ(doc.at("members").size(), 6u);
}

TEST_F(CliTest, MatchingSweepThresholdColumn) {
  const auto r = run({"matching-sweep", "--k", "1/1", "--n", "5000", "--d", "50,160,260",
                      "--trials", "1", "--mode", "AGamma", "--seed", "3", "--out",
                      path("s.csv"), "--emit-trials", path("t.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(slurp(path("s.csv")));
  std::string line;
  std::vector<double> cs;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("mode", 0) == 0) continue;
    std::istringstream fields(line);
    std::string cell;
    for (int i = 0; i < 6; ++i) std::getline(fields, cell, ',');
    cs.push_back(std::stod(cell));
  }
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_NEAR(cs[0], -3.41, 0.01);
  EXPECT_NEAR(cs[1], 0.04, 0.01);
  EXPECT_NEAR(cs[2], 7.96, 0.01);
  std::istringstream trials(slurp(path("t.jsonl")));
  int count = 0;
  while (std::getline(trials, line)) {
    EXPECT_TRUE(json::accept(line));
    ++count;
  }
  EXPECT_EQ(count, 3);
}

TEST_F(CliTest, MatchingSweepJsonToStdout) {
  const auto r = run({"matching-sweep", "--k", "1", "--n", "50", "--d", "3,7", "--trials", "4",
                      "--format", "json", "--policy", "random", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("rows").size(), 2u);
  EXPECT_EQ(doc.at("metadata").at("seed"), "1");
}

TEST_F(CliTest, ErBaseline) {
  const auto r = run({"er-baseline", "--n", "100", "--c", "0,3", "--trials", "10", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ER,1,1,100,,"), std::string::npos) << r.out;
}

TEST_F(CliTest, CommutativeSweepAndFile) {
  const auto r = run({"commutative", "--k", "1", "--m", "20", "--d", "3,15", "--h", "2",
                      "--trials", "2", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Commutative"), std::string::npos);

  // Stacked identity matchings commute.
  std::ofstream(path("id.lay1")) << "LAY1 1 1 2 2\nBRG1 1 1 2 1\n0\n1\nBRG1 1 1 2 1\n1\n0\n";
  const auto file = run({"commutative", "--graph", path("id.lay1"), "--out", path("r.json")});
  ASSERT_EQ(file.code, 0) << file.err;
  EXPECT_EQ(file.out.rfind("commutative (4 edge checks)", 0), 0u) << file.out;
  const auto doc = json::parse(slurp(path("r.json")));
  EXPECT_TRUE(doc.at("commutative").get<bool>());
}

TEST_F(CliTest, Magnification) {
  const auto r = run({"magnification", "--k", "2", "--m", "4", "--d", "2", "--h", "2",
                      "--seed", "1", "--out", path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("D_1 = 2 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("D_2 = 4 "), std::string::npos);
  EXPECT_NE(r.out.find("non-increasing: yes"), std::string::npos);
  const auto doc = json::parse(slurp(path("m.json")));
  EXPECT_TRUE(doc.at("monotone").get<bool>());

  std::ofstream(path("g.brg1")) << "BRG1 2 1 2 1\n0 3\n1 2\n";
  const auto brute = run({"magnification", "--graph", path("g.brg1"), "--algorithm", "brute"});
  ASSERT_EQ(brute.code, 0) << brute.err;
  EXPECT_NE(brute.out.find("D_1 = 2 "), std::string::npos) << brute.out;
}

TEST_F(CliTest, Analytic) {
  const auto r = run({"analytic", "--name", "no_edge", "--k", "1", "--n", "5", "--d", "3", "--s",
                      "2", "--conditioned"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("exact"), "1/6");
  EXPECT_EQ(doc.at("name"), "no_edge");

  const auto c = json::parse(
      run({"analytic", "--name", "threshold_c", "--k", "4", "--n", "32", "--d", "4"}).out);
  EXPECT_NEAR(c.at("float").get<double>(), -0.772589, 1e-6);
  const auto er = json::parse(run({"analytic", "--name", "er_matching", "--c", "0"}).out);
  EXPECT_NEAR(er.at("float").get<double>(), 0.135335, 1e-6);
  const auto bounds = json::parse(
      run({"analytic", "--name", "commutative_d_bounds", "--k", "1", "--m", "400", "--h", "2"}).out);
  EXPECT_NEAR(bounds.at("float").at("d_low").get<double>(), 28.26, 0.01);
  for (const char* name : {"no_edge_upper", "isolated", "a_plus_bounds", "nonmatching",
                           "expected_a_minus", "expected_q", "pair_expectations"}) {
    const auto out = run({"analytic", "--name", name, "--k", "1", "--n", "10", "--d", "2", "--s",
                          "1", "--t", "2"});
    EXPECT_EQ(out.code, 0) << name << ": " << out.err;
  }
}

TEST_F(CliTest, Stats) {
  const auto r = run({"stats", "--k", "1", "--n", "30", "--d", "3", "--trials", "2000",
                      "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("common_neighbors"), std::string::npos);
  const auto ex = run({"stats", "--k", "1", "--n", "5", "--d", "2", "--exhaustive"});
  ASSERT_EQ(ex.code, 0) << ex.err;
  EXPECT_NE(ex.out.find("mean common neighbors: 1/2"), std::string::npos) << ex.out;
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  auto bad = run({"sample", "--k", "1/2", "--n", "3", "--d", "2", "--seed", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
  bad = run({"matching-sweep", "--k", "1", "--n", "50", "--d", "3", "--trials", "0", "--seed", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--trials"), std::string::npos) << bad.err;
  bad = run({"matching-sweep", "--k", "1", "--n", "50", "--d", "1", "--trials", "3", "--mode",
             "AGamma", "--seed", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--d"), std::string::npos);
  bad = run({"er-baseline", "--n", "10", "--c", "50", "--trials", "3", "--seed", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--c"), std::string::npos);
  bad = run({"analytic", "--name", "nope"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("--name"), std::string::npos);
  EXPECT_EQ(run({"sample", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  const auto missing = run({"commutative", "--graph", path("missing.lay1")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_FALSE(missing.err.empty());
  const auto unwritable = run({"sample", "--k", "1", "--n", "3", "--d", "1", "--seed", "1",
                               "--out", "/nonexistent-dir/g.brg1"});
  EXPECT_EQ(unwritable.code, 1);
}

TEST_F(CliTest, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("matching-sweep"), std::string::npos);
}
