#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tempfair/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kGolden = TEMPFAIR_GOLDEN_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tempfair");
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = tempfair::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return (kGolden / name).string(); }

json golden_json(const std::string& name) {
  std::ifstream in(kGolden / name);
  return json::parse(in);
}

fs::path scratch(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("tempfair_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, GenMatchesGolden) {
  const auto r = cli({"gen", "--setting", "identical-days", "--agents", "2", "--rounds", "3",
                      "--per-round", "2", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), golden_json("gen_identical_days_seed7.out.json"));
}

TEST(Cli, ClassifyMatchesGolden) {
  const auto r = cli({"classify", golden("bivalued.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), golden_json("classify_bivalued.out.json"));
}

TEST(Cli, SolveMatchesGolden) {
  const auto r = cli({"solve", golden("bivalued.json"), "--alg", "rr-bivalued", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), golden_json("solve_rr_bivalued.out.json"));
}

TEST(Cli, CheckFailingAllocationMatchesGolden) {
  const auto r = cli({"check", golden("bivalued.json"), golden("all_to_one.json"), "--concept",
                      "tef1", "--per-round"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out), golden_json("check_all_to_one.out.json"));
}

TEST(Cli, SearchMatchesGolden) {
  const auto r = cli({"search", golden("scheduling.json"), "--concept", "tefx", "--schedule"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), golden_json("search_scheduling.out.json"));
  const auto none = cli({"search", golden("scheduling.json"), "--concept", "tefx"});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(json::parse(none.out)["exists"], false);
}

TEST(Cli, SolveOutputFeedsCheck) {
  const auto solved = cli({"solve", golden("bivalued.json"), "--alg", "rr-bivalued"});
  ASSERT_EQ(solved.code, 0);
  const auto alloc = scratch("solved.json", solved.out);
  const auto half = cli({"check", golden("bivalued.json"), alloc.string(), "--concept",
                         "atefx:1/2"});
  EXPECT_EQ(half.code, 0) << half.err;
  EXPECT_EQ(json::parse(half.out)["holds"], true);
  const auto more = cli({"check", golden("bivalued.json"), alloc.string(), "--concept",
                         "atefx:501/1000"});
  EXPECT_EQ(more.code, 1);
  fs::remove(alloc);
}

TEST(Cli, SolveList) {
  const auto r = cli({"solve", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rr-bivalued"), std::string::npos);
  EXPECT_NE(r.out.find("tefx-identical-days-scheduled-two"), std::string::npos);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"check", golden("bivalued.json")}).code, 2);

  const auto missing = cli({"classify", "/nonexistent/instance.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("error: "), std::string::npos);

  const auto bad = scratch("bad.json", R"({"agents": 2, "rounds": [["g1"]]})");
  const auto r = cli({"classify", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'values'"), std::string::npos);
  fs::remove(bad);

  EXPECT_EQ(cli({"solve", golden("bivalued.json"), "--alg", "nope"}).code, 2);
  EXPECT_EQ(cli({"solve", golden("bivalued.json"), "--alg", "tef1-house-t3"}).code, 2);
  EXPECT_EQ(cli({"check", golden("bivalued.json"), golden("all_to_one.json"), "--concept", "tfoo"})
                .code,
            2);
  EXPECT_EQ(cli({"gen", "--agents", "0"}).code, 2);
}
