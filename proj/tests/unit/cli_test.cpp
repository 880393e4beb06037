// Copyright 2026 The Casemix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "casemix/cli/cli.hpp"
#include "casemix/io/json.hpp"

namespace casemix::cli {
namespace {

using io::Json;
namespace fs = std::filesystem;

std::string DataFile(const std::string& name) { return std::string(CASEMIX_DATA_DIR) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "casemix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("casemix_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, BoundsTable) {
  const auto r = Cli({"bounds", DataFile("toy.json")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("A"), std::string::npos);
  EXPECT_NE(r.out.find("100.00"), std::string::npos);
  EXPECT_NE(r.out.find("TOTAL"), std::string::npos);
  EXPECT_NE(r.out.find("150.00"), std::string::npos);
}

TEST_F(CliTest, BoundsJsonFile) {
  const std::string out = (dir_ / "bounds.json").string();
  ASSERT_EQ(Cli({"bounds", DataFile("toy.json"), "--out", out}).code, kOk);
  const Json j = io::ReadJsonFile(out);
  EXPECT_EQ(j["bounds_source"], "computed");
  EXPECT_DOUBLE_EQ(j["groups"][1]["bound"].get<double>(), 50.0);
  EXPECT_DOUBLE_EQ(j["total"].get<double>(), 150.0);
}

TEST_F(CliTest, MissingFileIsUsageError) {
  EXPECT_EQ(Cli({"bounds", (dir_ / "missing.json").string()}).code, kUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(Cli({}).code, kUsage);
  EXPECT_EQ(Cli({"bounds", DataFile("toy.json"), "--bounds", "guess"}).code, kUsage);
}

TEST_F(CliTest, SolveWritesResultToStdout) {
  const auto r = Cli({"solve", DataFile("toy.json"), DataFile("uf/linear.json"), "--objective", "mmu"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_NEAR(j["groups"][0]["n"].get<double>(), 50.0, 1e-6);
  EXPECT_NEAR(j["groups"][1]["n"].get<double>(), 25.0, 1e-6);
  EXPECT_NEAR(j["min_u"].get<double>(), 50.0, 1e-6);
  EXPECT_NE(r.err.find("optimal"), std::string::npos);
}

TEST_F(CliTest, ZeroEpsilonsAreRejected) {
  const auto r = Cli({"solve", DataFile("toy.json"), DataFile("uf/linear.json"), "--eps1", "0",
                      "--eps2", "0"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("eps"), std::string::npos);
}

TEST_F(CliTest, ZeroedSolveExitsOne) {
  // Both groups at 60% of their bound need 120 of the 100 theatre hours.
  const std::string uf = Write("uf2.json", R"({"default": {"template": "UF2", "indifference_pct": 60}})");
  const auto r = Cli({"solve", DataFile("toy.json"), uf, "--objective", "mmu"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_TRUE(Json::parse(r.out)["zeroed"].get<bool>());
}

TEST_F(CliTest, InvalidAspirationNamesGroup) {
  const std::string uf = Write("bad.json", R"({"default": {"template": "UF1"},
                                              "B": {"template": "UF3", "aspiration": 80}})");
  const auto r = Cli({"solve", DataFile("toy.json"), uf});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("/B/aspiration"), std::string::npos) << r.err;
}

TEST_F(CliTest, GoalMethods) {
  const auto gam = Cli({"solve", DataFile("toy.json"), "--method", "gam", "--goals", "bounds"});
  ASSERT_EQ(gam.code, kOk) << gam.err;
  EXPECT_NEAR(Json::parse(gam.out)["delta"].get<double>(), 0.5, 1e-6);

  const std::string goals = Write("goals.json", R"({"A": 40, "B": 20})");
  const auto gpm = Cli({"solve", DataFile("toy.json"), "--method", "gpm", "--goals", goals});
  ASSERT_EQ(gpm.code, kOk) << gpm.err;
  const Json j = Json::parse(gpm.out);
  // Both goals fit in the theatre, so goal programming meets them exactly.
  EXPECT_NEAR(j["groups"][0]["n"].get<double>(), 40.0, 1e-6);
  EXPECT_NEAR(j["groups"][1]["n"].get<double>(), 20.0, 1e-6);

  EXPECT_EQ(Cli({"solve", DataFile("toy.json"), "--method", "nope"}).code, kUsage);
  EXPECT_EQ(Cli({"solve", DataFile("toy.json")}).code, kUsage);  // ufm without a config
}

TEST_F(CliTest, RepairAddsBaseStage) {
  const std::string uf = Write("uf3.json", R"({"default": {"template": "UF3", "aspiration_pct": 20}})");
  const auto r = Cli({"solve", DataFile("toy.json"), uf, "--repair", "sum-overachieve"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["base"]["N"].get<double>(), 30.0, 1e-6);
  EXPECT_NEAR(j["N"].get<double>(), 90.0, 1e-6);
}

TEST_F(CliTest, CsvResultNeedsOut) {
  EXPECT_EQ(Cli({"solve", DataFile("toy.json"), DataFile("uf/linear.json"), "--format", "csv"}).code,
            kUsage);
  const std::string out = (dir_ / "r.csv").string();
  EXPECT_EQ(Cli({"solve", DataFile("toy.json"), DataFile("uf/linear.json"), "--format", "csv",
                 "--out", out})
                .code,
            kOk);
  EXPECT_TRUE(fs::exists(out));
}

TEST_F(CliTest, SweepWritesReports) {
  const std::string out = (dir_ / "sweep").string();
  const auto r = Cli({"sweep", DataFile("toy.json"), "--template", "UF3", "--param", "aspiration",
                      "--values", "20:60:20", "--out", out, "--jobs", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const char* f : {"sweep.csv", "case_mix.csv", "case_mix_diff.csv", "sweep.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  }
  std::ifstream in(fs::path(out) / "sweep.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "value,objective,N,sum_u,min_u,zeroed,status");

  const auto stdout_run = Cli({"sweep", DataFile("toy.json"), "--template", "UF3", "--param",
                               "aspiration", "--values", "20", "--objectives", "msu"});
  ASSERT_EQ(stdout_run.code, kOk);
  EXPECT_NE(stdout_run.out.find("20.000000,MSU"), std::string::npos) << stdout_run.out;
  EXPECT_EQ(Cli({"sweep", DataFile("toy.json"), "--param", "colour", "--values", "1"}).code, kUsage);
}

TEST_F(CliTest, ParetoAudit) {
  const std::string caseload = Write("c.json", R"({"groups": [{"id": "A", "n": 10}, {"id": "B", "n": 5}]})");
  const auto r = Cli({"pareto", DataFile("toy.json"), caseload});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["is_pareto"].get<bool>());
  EXPECT_NEAR(j["corrected_N"].get<double>(), 95.0, 1e-6);  // B stays at 5, A fills the rest
}

TEST_F(CliTest, CaseStudyBoundsAndLinearMsu) {
  const auto bounds = Cli({"bounds", DataFile("princess_alexandra.json"), "--bounds", "reference"});
  ASSERT_EQ(bounds.code, kOk);
  const auto total = bounds.out.rfind("TOTAL");
  ASSERT_NE(total, std::string::npos);
  EXPECT_NEAR(std::stod(bounds.out.substr(total + 5)), 54077.91, 0.02);
  const auto r = Cli({"solve", DataFile("princess_alexandra.json"), DataFile("uf/linear.json"),
                      "--objective", "msu"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["N"].get<double>(), 31663.97, 0.005 * 31663.97);
}

TEST_F(CliTest, SameInputsSameOutput) {
  const std::vector<std::string> args = {"solve", DataFile("toy.json"), DataFile("uf/linear.json"),
                                         "--objective", "msu"};
  EXPECT_EQ(Cli(args).out, Cli(args).out);
}

}  // namespace
}  // namespace casemix::cli
