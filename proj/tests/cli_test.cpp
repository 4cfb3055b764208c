#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = camshift::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("camshift_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    ASSERT_EQ(run({"build", "--dim", "1", "--levels", "3", "--out", (dir_ / "d1.json").string()}).code, 0);
    ASSERT_EQ(run({"build", "--dim", "2", "--levels", "2", "--out", (dir_ / "d2.json").string()}).code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string d1() { return (dir_ / "d1.json").string(); }
  static std::string d2() { return (dir_ / "d2.json").string(); }
  static inline fs::path dir_;
};

}  // namespace

TEST_F(Cli, BuildOneDimensional) {
  const auto j = json::parse(slurp(d1()));
  EXPECT_EQ(j["params"], (json{"8", "979"}));
  for (const auto& c : j["certificates"]) EXPECT_TRUE(c["passed"].get<bool>());
}

TEST_F(Cli, BuildTwoDimensional) {
  const auto j = json::parse(slurp(d2()));
  EXPECT_EQ(j["params"], (json{"6"}));
  EXPECT_EQ(j["dim"], 2);
}

TEST_F(Cli, BuildRejectsOneLevel) { EXPECT_EQ(run({"build", "--levels", "1"}).code, 1); }

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "sft", "qn", "--matrix", "[[1]]"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, BuildIsDeterministic) {
  const auto a = run({"build", "--levels", "3"});
  const auto b = run({"build", "--levels", "3", "--jobs", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, slurp(d1()));
}

TEST_F(Cli, CertifyRoundTripIsByteIdentical) {
  const auto r = run({"certify", "--family", d1()});
  ASSERT_EQ(r.code, 0);
  const auto family = json::parse(slurp(d1()));
  EXPECT_EQ(r.out, family["certificates"].dump(2) + "\n");
}

TEST_F(Cli, VerifyLevelTwo) {
  const auto r = run({"verify", "--family", d1(), "--level", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["summary"], "12 pairs, 0 occurrences");
  const auto r2 = run({"verify", "--family", d2(), "--level", "2", "--jobs", "2"});
  ASSERT_EQ(r2.code, 0);
  const auto j2 = json::parse(r2.out);
  EXPECT_EQ(j2["summary"], "12 pairs, 0 occurrences");
  EXPECT_TRUE(j2["multiplicity"]["holds"].get<bool>());
}

TEST_F(Cli, MeasurePrintsExactRationals) {
  const auto r = run({"measure", "--family", d1(), "--k", "2", "--cylinders", "0,1"});
  ASSERT_EQ(r.code, 0);
  const auto cyl = json::parse(r.out)["measures"][0]["cylinders"];
  EXPECT_EQ(cyl[0]["a"], "1/9");
  EXPECT_EQ(cyl[1]["a"], "8/9");
  const auto csv = run({"--format", "csv", "measure", "--family", d1(), "--k", "2"});
  EXPECT_NE(csv.out.find("2,\"0\",\"1/9\",\"8/9\""), std::string::npos) << csv.out;
}

TEST_F(Cli, WindowAndParse) {
  const auto w = run({"window", "--family", d1(), "--start", "-8", "--len", "18"});
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(json::parse(w.out)["word"].get<std::string>().size(), 18u);
  const auto p = run({"parse", "--family", d1()});
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(json::parse(p.out)["violations"], 0);
  EXPECT_EQ(run({"parse", "--family", d1(), "--start", "0", "--len", "9"}).code, 1);
  const auto w2 = run({"window", "--family", d2(), "--start", "-5,-5", "--len", "12,12"});
  ASSERT_EQ(w2.code, 0);
  EXPECT_EQ(json::parse(w2.out)["array"]["sides"], (json{12, 12}));
  EXPECT_EQ(run({"window", "--family", d2(), "--start", "6,0", "--len", "2,2"}).code, 1);
}

TEST_F(Cli, Complexity) {
  const auto r = run({"--format", "csv", "complexity", "--family", d1(), "--n-max", "3", "--length", "100"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "n,p\n");
}

TEST_F(Cli, SftCommands) {
  const auto qn = run({"sft", "qn", "--matrix", "[[1,1],[1,0]]", "--n", "3"});
  ASSERT_EQ(qn.code, 0);
  EXPECT_EQ(json::parse(qn.out), (json{{"1", "1"}, {"2", "2"}, {"3", "3"}}));
  const auto csv = run({"--format", "csv", "sft", "qn", "--matrix", "[[2]]", "--n", "2"});
  EXPECT_EQ(csv.out, "n,q\n1,\"2\"\n2,\"2\"\n");
  const auto embed = run({"sft", "embed", "--matrix", "[[1,1],[1,0]]", "--m", "2"});
  ASSERT_EQ(embed.code, 0);
  EXPECT_EQ(json::parse(embed.out)["entropy"], "pass");
  EXPECT_EQ(run({"sft", "perron", "--matrix", "[[1,1],[0,1]]"}).code, 2);
  EXPECT_EQ(run({"sft", "qn", "--matrix", "[[1,-1]]"}).code, 4);
  EXPECT_EQ(run({"sft", "qn", "--matrix", "[[1,1],[1]]"}).code, 4);
}

TEST_F(Cli, MalformedFamilyFile) {
  const auto bad = dir_ / "bad.json";
  std::ofstream(bad) << "{not json";
  const auto r = run({"verify", "--family", bad.string()});
  EXPECT_EQ(r.code, 4);
  EXPECT_TRUE(r.out.empty());
  auto j = json::parse(slurp(d1()));
  j["params"][1] = "978";
  const auto tampered = dir_ / "tampered.json";
  std::ofstream(tampered) << j.dump();
  EXPECT_EQ(run({"certify", "--family", tampered.string()}).code, 4);
}

TEST_F(Cli, BudgetExhaustion) {
  const auto r = run({"--budget", "1000", "window", "--family", d1(), "--start", "1", "--len", "5000"});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_TRUE(r.out.empty());
  ::setenv("CAMSHIFT_BUDGET", "1000", 1);
  const auto env = run({"complexity", "--family", d1(), "--length", "5000"});
  ::unsetenv("CAMSHIFT_BUDGET");
  EXPECT_EQ(env.code, 3);
}
