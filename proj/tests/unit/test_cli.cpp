#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace cdia::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cdia(std::vector<std::string> args) {
  args.insert(args.begin(), "cdia");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(CDIA_TEST_DATA_DIR) / "cli" / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, GenWritesGraphAndSidecar) {
  const auto r = cdia({"gen", "--kind", "cdia", "-p", "l=3", "-o", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("g.txt")));
  const auto side = json::parse(std::ifstream(path("g.txt.json")));
  EXPECT_EQ(side["graph"]["m"], 9);
  EXPECT_EQ(json::parse(r.out)["generator"]["kind"], "cdia");
}

TEST_F(Cli, FindAndVerifyK33) {
  cdia({"gen", "--kind", "cdia", "-p", "l=3", "-o", path("g.txt")});
  const auto r = cdia({"find", "-i", path("g.txt"), "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_TRUE(j["found"].get<bool>());
  EXPECT_EQ(j["l"], 3);
  std::string w;
  for (const auto& v : j["witness"]) w += (w.empty() ? "" : ",") + std::to_string(v.get<int>());
  const auto v = cdia({"verify", "-i", path("g.txt"), "-w", w});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(json::parse(v.out)["accept"].get<bool>());
}

TEST_F(Cli, NotFoundIsStillSuccess) {
  cdia({"gen", "--kind", "incidence-pg2", "-p", "q=2", "-o", path("g.txt")});
  const auto r = cdia({"find", "-i", path("g.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out)["found"].get<bool>());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(cdia({}).code, 2);
  EXPECT_EQ(cdia({"nosuch"}).code, 2);
  EXPECT_EQ(cdia({"find"}).code, 2);
  EXPECT_EQ(cdia({"find", "-i", "x", "--seed", "abc"}).code, 2);
  EXPECT_EQ(cdia({"--help"}).code, 0);
}

TEST_F(Cli, IoErrors) {
  EXPECT_EQ(cdia({"find", "-i", path("missing.txt")}).code, 3);
  EXPECT_EQ(cdia({"gen", "--kind", "prism", "-p", "l=4", "-o", path("no/such/dir/g.txt")}).code, 3);
  EXPECT_EQ(cdia({"experiment", "--spec", path("missing.json")}).code, 3);
}

TEST_F(Cli, ValidationErrors) {
  const auto bad = write("bad.txt", "0 1\n1 x\n");
  const auto r = cdia({"find", "-i", bad});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(cdia({"gen", "--kind", "incidence-pg2", "-p", "q=4", "-o", path("g.txt")}).code, 4);
  const auto tri = write("tri.txt", "0 1\n1 2\n2 0\n");
  EXPECT_EQ(cdia({"c4graph", "-i", tri}).code, 4);
  EXPECT_EQ(cdia({"c4graph", "-i", tri, "--reduce"}).code, 0);
  EXPECT_EQ(cdia({"find", "-i", tri, "--delta", "0.5"}).code, 4);
  EXPECT_EQ(cdia({"verify", "-i", tri, "-w", "0,1,2"}).code, 4);
}

TEST_F(Cli, C4GraphDump) {
  cdia({"gen", "--kind", "random-bipartite", "-p", "nx=3", "-p", "ny=3", "-p", "m=9", "-o", path("g.txt")});
  const auto r = cdia({"c4graph", "-i", path("g.txt"), "--tau", "1", "--dump", path("gamma.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["num_thick"], 18);
  std::ifstream in(path("gamma.txt"));
  std::size_t lines = 0;
  for (std::string s; std::getline(in, s);) lines += s.find("thick") != std::string::npos;
  EXPECT_EQ(lines, 18u);
}

TEST_F(Cli, ExpandNavigateOracle) {
  cdia({"gen", "--kind", "random-bipartite", "-p", "nx=20", "-p", "ny=20", "-p", "m=150", "--seed", "3", "-o",
        path("g.txt")});
  const auto e = cdia({"expand", "-i", path("g.txt"), "-o", path("h.txt")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_TRUE(json::parse(e.out)["report"].contains("P4"));
  const auto n = cdia({"navigate", "-i", path("g.txt"), "--seed", "2"});
  ASSERT_EQ(n.code, 0) << n.err;
  EXPECT_TRUE(json::parse(n.out)["fan"]["valid"].get<bool>());
  const auto o = cdia({"oracle", "-i", path("g.txt"), "--l-max", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(json::parse(o.out).contains("exhaustive"));
}

TEST_F(Cli, ExperimentPrintsCsv) {
  const auto spec = write("spec.json", R"({"trials": 2, "sweep": {"n": 12, "c": [0.5]}})");
  const auto r = cdia({"experiment", "--spec", spec, "--threads", "2", "--csv", path("out.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("cell,generator,", 0), 0u);
  std::ifstream in(path("out.csv"));
  std::stringstream file;
  file << in.rdbuf();
  EXPECT_EQ(file.str(), r.out);
  EXPECT_EQ(cdia({"experiment", "--spec", spec, "--csv", path("no/dir/x.csv")}).code, 3);
  const auto bad = write("bad.json", R"({"trials": 1, "oops": true})");
  EXPECT_EQ(cdia({"experiment", "--spec", bad}).code, 4);
}

}  // namespace
}  // namespace cdia::cli
