#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"vmolab"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = vmolab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vmolab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  bool directory_empty_except(std::initializer_list<std::string> keep) const {
    for (const auto& entry : fs::directory_iterator(dir_)) {
      bool kept = false;
      for (const auto& k : keep) kept = kept || entry.path().filename() == k;
      if (!kept) return false;
    }
    return true;
  }
  fs::path dir_;
};

bool single_line(const std::string& s) { return !s.empty() && s.back() == '\n' && s.find('\n') == s.size() - 1; }

TEST_F(CliTest, FsVerifyIsDeterministicAndCarriesDigest) {
  const auto a = invoke({"fs-verify", "--trials", "5", "--seed", "3", "--out", path("a.csv")});
  const auto b = invoke({"fs-verify", "--trials", "5", "--seed", "3", "--out", path("b.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const auto text = slurp(path("a.csv"));
  EXPECT_EQ(text, slurp(path("b.csv")));
  EXPECT_EQ(text.rfind("# fs-verify config_digest=", 0), 0u);
  const auto second = text.substr(text.find('\n') + 1);
  EXPECT_EQ(second.rfind("trial,mode,p,N0,lambda,lhs,rhs,pass\n", 0), 0u);

  const auto c = invoke({"fs-verify", "--trials", "5", "--seed", "4", "--out", path("c.csv")});
  ASSERT_EQ(c.code, 0);
  const auto other = slurp(path("c.csv"));
  EXPECT_NE(text.substr(0, text.find('\n')), other.substr(0, other.find('\n')));
}

TEST_F(CliTest, JsonConfigMatchesFlags) {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << R"({"trials": 4, "seed": 9, "p": [2.5, 3]})";
  }
  const auto a = invoke({"fs-verify", "--config", path("cfg.json"), "--out", path("a.csv")});
  const auto b = invoke({"fs-verify", "--trials", "4", "--seed", "9", "--p", "2.5,3", "--out", path("b.csv")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, MalformedJsonConfigIsRejected) {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << "{ trials: ";
  }
  const auto r = invoke({"fs-verify", "--config", path("cfg.json"), "--out", path("a.csv")});
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  EXPECT_FALSE(fs::exists(path("a.csv")));
}

TEST_F(CliTest, KappaBelowFourIsAConfigError) {
  const auto r = invoke({"example-bound", "--kappa", "3", "--res", "64", "--out", path("e.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  EXPECT_NE(r.err.find("kappa"), std::string::npos);
  EXPECT_TRUE(directory_empty_except({}));
}

TEST_F(CliTest, AprioriRejectsExponentTwo) {
  ASSERT_EQ(invoke({"field-gen", "--res", "32", "--out", path("f.bin")}).code, 0);
  const auto r = invoke({"apriori-sweep", "--field", path("f.bin"), "--delta", "0.25", "--p", "2", "--out", path("a.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  EXPECT_NE(r.err.find("(2, inf)"), std::string::npos);
  EXPECT_TRUE(directory_empty_except({"f.bin", "f.bin.json"}));
}

TEST_F(CliTest, AgmonLiftCapIsCheckedBeforeAnyWork) {
  const auto r = invoke({"agmon-check", "--dim", "2", "--res", "128", "--out", path("g.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_line(r.err)) << r.err;
  EXPECT_NE(r.err.find("exceeds"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("g.csv")));
}

TEST_F(CliTest, UnknownSubcommandAndMissingOutput) {
  const auto a = invoke({"no-such-thing"});
  EXPECT_NE(a.code, 0);
  EXPECT_TRUE(single_line(a.err)) << a.err;
  const auto b = invoke({"fs-verify", "--trials", "2"});
  EXPECT_NE(b.code, 0);
  EXPECT_TRUE(single_line(b.err)) << b.err;
}

TEST_F(CliTest, ExampleBoundAndAgmonWriteCsv) {
  const auto e = invoke({"example-bound", "--res", "64", "--out", path("e.csv")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(slurp(path("e.csv")).rfind("# example-bound config_digest=", 0), 0u);
  const auto g = invoke({"agmon-check", "--res", "32", "--mu", "0,2", "--out", path("g.csv")});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(slurp(path("g.csv")).rfind("# agmon-check config_digest=", 0), 0u);
}

TEST_F(CliTest, FieldSnapshotFeedsOscillationAndLocalProbe) {
  ASSERT_EQ(invoke({"field-gen", "--res", "32", "--out", path("f.bin")}).code, 0);
  const auto o = invoke({"oscillation", "--field", path("f.bin"), "--r0", "0.25", "--directions", "4", "--out", path("o.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(slurp(path("o.csv")).find("region_id,cx,cy,radius,best_dir_angle,osc_value\n"), std::string::npos);
  const auto l = invoke({"local-probe", "--res", "32", "--radius", "0.2", "--count", "3", "--out", path("l.csv")});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(slurp(path("l.csv")).rfind("# local-probe config_digest=", 0), 0u);
}

}  // namespace
