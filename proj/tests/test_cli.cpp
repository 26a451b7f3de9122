#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liecat/cli.hpp"
#include "liecat/report.hpp"

using namespace liecat;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json cli_json(std::vector<std::string> args) {
  args.push_back("--json");
  const CliRun r = cli(args);
  EXPECT_NE(r.code, kExitUsage) << r.err;
  return json::parse(r.out);
}

json golden(const std::string& name) {
  std::ifstream f(std::string(LIECAT_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(f) << name;
  return json::parse(f);
}

// Every scalar leaf of `j`, as the JSON text the text renderer prints.
void leaves(const json& j, std::vector<std::string>& out) {
  if (j.is_structured()) {
    for (const auto& v : j) leaves(v, out);
  } else if (j.is_number()) {
    out.push_back(j.dump());
  }
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"nope"}).code, kExitUsage);
  EXPECT_EQ(cli({"--nonsense"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "2", "--sv", "1:2", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--sv", "1:2"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "2", "--sv", "1:2", "--field", "Q"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "3", "--sv", "1:2"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "2", "--sv", "1:1,1:1"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "2", "--sv", "1-2"}).code, kExitUsage);
  EXPECT_EQ(cli({"levels", "--n", "2", "--sv", "0:2"}).code, kExitUsage);
  EXPECT_EQ(cli({"hsbound", "--n", "2", "--cats", "0,1"}).code, kExitUsage);
  EXPECT_EQ(cli({"hsbound", "--n", "2", "--cats", "0,x,0"}).code, kExitUsage);
  EXPECT_EQ(cli({"bound", "--n-max", "1"}).code, kExitUsage);
  const CliRun r = cli({"flow", "--n", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = cli({"--help"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("levels"), std::string::npos);
}

TEST(Cli, BoundMatchesGolden) {
  EXPECT_EQ(cli_json({"bound", "--n-max", "3"}), golden("bound_nmax3.json"));
}

TEST(Cli, LevelsMatchesGolden) {
  EXPECT_EQ(cli_json({"levels", "--n", "2", "--sv", "1:1,2:1"}), golden("levels_sp2.json"));
}

TEST(Cli, HsboundMatchesGolden) {
  EXPECT_EQ(cli_json({"hsbound", "--n", "3", "--cats", "0,1,1,0"}), golden("hsbound_n3.json"));
}

TEST(Cli, ReportRoundTrips) {
  const json j = cli_json({"levels", "--n", "3", "--sv", "1/2:1,3:2", "--n0", "0", "--field", "C"});
  const Report r = j.get<Report>();
  EXPECT_EQ(r.command, "levels");
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.version, kVersion);
  EXPECT_EQ(r.parameters.at("field"), "C");
  EXPECT_EQ(json(r), j);
  EXPECT_THROW(json::object({{"command", "x"}}).get<Report>(), json::exception);
}

TEST(Cli, LevelsExactValuesAndBound) {
  const json j = cli_json({"levels", "--n", "3", "--sv", "1:1,2:1,3:1"});
  const auto& res = j.at("results");
  EXPECT_EQ(res.at("level_count"), 7);
  EXPECT_EQ(res.at("bound"), 6);
  EXPECT_EQ(res.at("levels").front().at("exact"), "-6");
  // Non-Morse data reports why the bound does not apply.
  const json nm = cli_json({"levels", "--n", "3", "--sv", "1:2", "--n0", "1"});
  EXPECT_TRUE(nm.at("results").at("bound").is_null());
  EXPECT_EQ(nm.at("results").at("level_count"), 3);
}

TEST(Cli, UnsortedSvInputIsAccepted) {
  const json a = cli_json({"levels", "--n", "2", "--sv", "2:1,1:1"});
  const json b = cli_json({"levels", "--n", "2", "--sv", "1:1,2:1"});
  EXPECT_EQ(a.at("results"), b.at("results"));
}

TEST(Cli, TextCarriesTheSameNumbers) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"levels", "--n", "3", "--sv", "1:1,5/2:2", "--n0", "0"},
        std::vector<std::string>{"bound", "--n-max", "6"},
        std::vector<std::string>{"cover", "--trials", "50", "--seed", "3"},
        std::vector<std::string>{"gradcheck", "--n", "2", "--trials", "2", "--field", "C"}}) {
    const CliRun text = cli(args);
    ASSERT_EQ(text.code, kExitPass) << text.err;
    std::vector<std::string> nums;
    leaves(cli_json(args), nums);
    ASSERT_FALSE(nums.empty());
    for (const auto& n : nums) EXPECT_NE(text.out.find(n), std::string::npos) << args[0] << ": " << n;
  }
}

TEST(Cli, CsvExport) {
  const auto path = std::filesystem::temp_directory_path() / "liecat_levels_test.csv";
  const CliRun r = cli({"levels", "--n", "3", "--sv", "1:1,2:2", "--csv", path.string()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "value,component_indices,dim");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  EXPECT_EQ(rows, 6);
  std::filesystem::remove(path);
}

TEST(Cli, FlowIsSeededAndPasses) {
  const std::vector<std::string> args{"flow", "--n", "2", "--sv", "1:1,2:1", "--trials", "12", "--seed", "7"};
  const json a = cli_json(args), b = cli_json(args);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.at("pass").get<bool>());
  EXPECT_EQ(a.at("parameters").at("seed"), 7);
  EXPECT_EQ(a.at("results").at("records").size(), 12u);
  const json c = cli_json({"flow", "--n", "2", "--sv", "1:1,2:1", "--trials", "12", "--seed", "8"});
  EXPECT_NE(a.at("results").at("records"), c.at("results").at("records"));
}

TEST(Cli, FailingRunExitsOne) {
  // One iteration cannot converge from Haar starts.
  const CliRun r = cli({"flow", "--n", "2", "--sv", "1:1,2:1", "--trials", "4", "--max-iters", "1"});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_NE(r.out.find("pass: false"), std::string::npos);
}

TEST(Cli, CoverAndGradcheckPass) {
  EXPECT_EQ(cli({"cover", "--trials", "100"}).code, kExitPass);
  EXPECT_EQ(cli({"gradcheck", "--n", "3", "--trials", "3", "--field", "R"}).code, kExitPass);
  const json j = cli_json({"cover", "--trials", "100", "--seed", "9"});
  EXPECT_EQ(j.at("results").at("uncovered_count"), 0);
  EXPECT_EQ(j.at("results").at("seed"), 9);
}
