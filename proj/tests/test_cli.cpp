#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "spinfold/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = spinfold::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> r;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) r.push_back(nlohmann::json::parse(l));
  return r;
}

std::string without_timing(const std::string& s) {
  std::string r;
  for (auto j : lines(s)) {
    j.erase("elapsed_ms");
    r += j.dump() + "\n";
  }
  return r;
}

TEST(Cli, VerifyExactMagnetic) {
  auto r = cli({"verify", "--model", "xxx", "--boundary", "magnetic", "--L", "5", "--lambda", "1", "--mu", "3/2",
                "--field", "exact"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("checks passed"), std::string::npos);
}

TEST(Cli, VerifyNegativeControlExpectedFail) {
  auto r = cli({"verify", "--model", "ino", "--boundary", "magnetic", "--mu", "0.6", "--lambda", "1", "--kappa", "2",
                "--format", "json", "--suite", "neg"});
  EXPECT_EQ(r.code, 0) << r.out;
  bool saw = false;
  for (const auto& j : lines(r.out))
    if (j["params"]["expect"] == "fail") {
      saw = true;
      EXPECT_EQ(j["status"], "Fail");
    }
  EXPECT_TRUE(saw);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({"verify", "--model", "ino"}).code, 2);
  EXPECT_EQ(cli({"verify", "--model", "heisenberg"}).code, 2);
  EXPECT_EQ(cli({"verify", "--model", "ino", "--kappa", "1", "--field", "exact"}).code, 2);
  EXPECT_EQ(cli({"verify", "--suite", "nothing.matches"}).code, 2);
  EXPECT_EQ(cli({"verify", "--L", "40"}).code, 2);
  EXPECT_EQ(cli({"fold", "Qq", "--preset", "all-ones"}).code, 2);
  EXPECT_EQ(cli({"relations", "diagonal", "--model", "xxx"}).code, 2);
  EXPECT_EQ(cli({"relations", "loop"}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, FoldExamples) {
  auto e0 = cli({"fold", "E0z", "--preset", "xxx-magnetic"});
  EXPECT_EQ(e0.code, 0);
  EXPECT_NE(e0.out.find("(2,0) * sz_{0}"), std::string::npos) << e0.out;
  EXPECT_NE(e0.out.find("(2,0) * sz_{-3}"), std::string::npos);

  auto h = cli({"fold", "Hxxx", "--preset", "all-ones", "--diff", "2*H0", "--allow-constant", "--format", "json"});
  EXPECT_EQ(h.code, 0) << h.out << h.err;
  auto j = lines(h.out).at(0);
  EXPECT_EQ(j["status"], "ConstantOnly");
  EXPECT_EQ(j["constant"][0].get<double>(), -1.5);

  auto x = cli({"fold", "E1+", "--preset", "xxx-magnetic", "--diff", "2*X+", "--format", "json"});
  EXPECT_EQ(x.code, 0);
  EXPECT_EQ(lines(x.out).at(0)["status"], "ExactZero");

  auto bad = cli({"fold", "E1+", "--preset", "all-ones", "--diff", "2*X+"});
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, Relations) {
  EXPECT_EQ(cli({"relations", "yangian", "--model", "xxx", "--L", "4", "--field", "exact"}).code, 0);
  auto tp = cli({"relations", "twisted-plus", "--model", "ino", "--kappa", "1", "--mu", "1", "--lambda", "1", "--L", "6",
                 "--format", "json"});
  EXPECT_EQ(tp.code, 0) << tp.out;
  for (const auto& j : lines(tp.out)) EXPECT_LE(j["max_interior"].get<double>(), 1e-9) << j.dump();
  EXPECT_EQ(cli({"relations", "diagonal", "--model", "double-xxx", "--L", "3"}).code, 0);
  EXPECT_EQ(cli({"relations", "twisted-plus", "--model", "xxx", "--mu", "3/2", "--form", "printed"}).code, 1);
}

TEST(Cli, Print) {
  auto m = cli({"print", "Mkmu", "--kappa", "20", "--mu", "1", "--L", "4"});
  EXPECT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("dominant: (1,0) * sz_{0}"), std::string::npos) << m.out;
  auto h = cli({"print", "Hxxx", "--L", "2"});
  EXPECT_EQ(h.code, 0) << h.err;
  EXPECT_NE(h.out.find("terms: 9\n"), std::string::npos) << h.out;
  EXPECT_NE(h.out.find("support: 2:9\n"), std::string::npos);
  EXPECT_NE(h.out.find("hermitian: yes"), std::string::npos);
  auto g = cli({"print", "Gk", "z", "--kappa", "1", "--L", "3"});
  EXPECT_EQ(g.code, 0) << g.err;
  EXPECT_NE(g.out.find("terms: "), std::string::npos);
}

TEST(Cli, Kernels) {
  auto k = cli({"kernels", "--kappa", "1", "--zmax", "3"});
  EXPECT_EQ(k.code, 0);
  EXPECT_EQ(std::count(k.out.begin(), k.out.end(), '\n'), 8);
  EXPECT_EQ(cli({"kernels"}).code, 2);
}

TEST(Cli, JsonIsDeterministic) {
  std::vector<std::string> a{"verify", "--model", "xxx", "--boundary", "open", "--format", "json", "--seed", "5"};
  auto r1 = cli(a), r2 = cli(a);
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(without_timing(r1.out), without_timing(r2.out));
  for (const auto& j : lines(r1.out))
    for (const char* key : {"check", "status", "max_interior", "constant", "witness", "params", "elapsed_ms"})
      EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, ConfigFileWithOverride) {
  std::string path = ::testing::TempDir() + "spinfold_cli_test.toml";
  {
    std::ofstream f(path);
    f << "model = \"xxx\"\nboundary = \"magnetic\"\nL = 3\nmu = \"3/2\"\nformat = \"json\"\nsuite = \"fold.Hxxx\"\n";
  }
  auto r = cli({"verify", "--config", path});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = lines(r.out).at(0);
  EXPECT_EQ(j["params"]["L"], 3);
  auto o = cli({"verify", "--config", path, "--L", "4"});
  EXPECT_EQ(lines(o.out).at(0)["params"]["L"], 4);
  EXPECT_EQ(cli({"verify", "--config", path + ".missing"}).code, 2);
  std::remove(path.c_str());
}

}  // namespace
