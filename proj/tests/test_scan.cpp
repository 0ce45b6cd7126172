// Copyright 2026 The nlbound Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "nlb/scan.hpp"
#include "nlb/state_io.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NLB_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nlbound_test_scan";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

nlb::ScanSpec fast_spec(nlb::Family f) {
  nlb::ScanSpec s;
  s.family = f;
  s.search = nlb::SearchConfig::fast();
  return s;
}

}  // namespace

TEST(Range, PointsIncludeBothEnds) {
  const nlb::Range r{0.0, 1.0, 101};
  EXPECT_EQ(r.at(0), 0.0);
  EXPECT_EQ(r.at(100), 1.0);
  EXPECT_NEAR(r.at(70), 0.70, 1e-15);
  EXPECT_EQ((nlb::Range{0.3, 0.9, 1}).at(0), 0.3);
  EXPECT_THROW((nlb::Range{0.0, 1.0, 0}).validate("x"), nlb::ValidationError);
  EXPECT_THROW((nlb::Range{1.0, 0.0, 3}).validate("x"), nlb::ValidationError);
}

TEST(Family, NamesRoundTrip) {
  for (auto f : {nlb::Family::Werner, nlb::Family::BellDiagonal, nlb::Family::Isotropic,
                 nlb::Family::SigmaMixture, nlb::Family::File}) {
    EXPECT_EQ(nlb::family_from_string(nlb::to_string(f)), f);
  }
  EXPECT_THROW(nlb::family_from_string("ghz"), nlb::ValidationError);
}

TEST(ScanSize, MatchesGridShape) {
  auto s = fast_spec(nlb::Family::Werner);
  s.x = {0.0, 1.0, 11};
  EXPECT_EQ(nlb::scan_size(s), 11u);
  s.family = nlb::Family::BellDiagonal;
  s.p = {-1.0, 1.0, 5};
  EXPECT_EQ(nlb::scan_size(s), 125u);
  s.fix_p[0] = 0.9;
  EXPECT_EQ(nlb::scan_size(s), 25u);
  s.family = nlb::Family::SigmaMixture;
  s.alpha = {-1.0, 1.0, 3};
  s.beta = {0.0, 1.0, 4};
  EXPECT_EQ(nlb::scan_size(s), 12u);
}

TEST(RunScan, WernerColumnsAndCrossing) {
  auto s = fast_spec(nlb::Family::Werner);
  s.x = {0.0, 1.0, 11};
  const auto table = nlb::run_scan(s);
  const std::vector<std::string> cols{"x", "bound_t1", "bound_chsh", "nonlocal", "status"};
  EXPECT_EQ(table.columns, cols);
  ASSERT_EQ(table.rows.size(), 11u);
  EXPECT_EQ(table.rows[0][0], "0");
  EXPECT_EQ(table.rows[0][1], "0");
  EXPECT_EQ(table.rows[0][3], "false");
  EXPECT_EQ(table.rows[7][3], "false");  // x = 0.7
  EXPECT_EQ(table.rows[8][3], "true");   // x = 0.8
  for (const auto& r : table.rows) EXPECT_EQ(r.back(), "ok");
}

TEST(RunScan, SkipsInvalidBellDiagonalPoints) {
  auto s = fast_spec(nlb::Family::BellDiagonal);
  s.p = {-1.0, 1.0, 3};
  s.fix_p[0] = 1.0;
  s.fix_p[1] = 1.0;
  const auto table = nlb::run_scan(s);
  ASSERT_EQ(table.rows.size(), 3u);
  const auto& bad = table.rows[0];  // (1, 1, -1)
  EXPECT_EQ(bad[2], "-1");
  EXPECT_EQ(bad[3], "");
  EXPECT_EQ(bad.back().rfind("skipped: ", 0), 0u) << bad.back();
  EXPECT_NE(bad.back().find("positive-semidefinite"), std::string::npos);
  EXPECT_EQ(table.rows[2].back(), "ok");  // (1, 1, 1) is the singlet-like vertex
}

TEST(RunScan, QuditFamiliesReportKernel) {
  auto s = fast_spec(nlb::Family::Isotropic);
  s.x = {0.0, 1.0, 2};
  const auto table = nlb::run_scan(s);
  const std::vector<std::string> cols{"d", "x", "bound_t2", "kernel", "nonlocal", "status"};
  EXPECT_EQ(table.columns, cols);
  EXPECT_EQ(table.rows[1][0], "3");
  EXPECT_EQ(table.rows[1][4], "true");
  EXPECT_FALSE(table.rows[1][3].empty());
}

TEST(RunScan, DeterministicAcrossRuns) {
  auto s = fast_spec(nlb::Family::SigmaMixture);
  s.alpha = {-1.0, 1.0, 3};
  s.beta = {0.0, 1.0, 3};
  const std::string a = nlb::render_csv(nlb::run_scan(s));
  const std::string b = nlb::render_csv(nlb::run_scan(s));
  EXPECT_EQ(a, b);
}

TEST(Render, CsvQuotesAndJsonTypes) {
  nlb::ScanTable t{{"x", "nonlocal", "status"},
                   {{"0.5", "true", "ok"}, {"1.5", "", "skipped: a, \"b\""}}};
  EXPECT_EQ(nlb::render_csv(t),
            "x,nonlocal,status\n0.5,true,ok\n1.5,,\"skipped: a, \"\"b\"\"\"\n");
  const auto doc = nlohmann::json::parse(nlb::render_json(t));
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["x"], 0.5);
  EXPECT_EQ(doc[0]["nonlocal"], true);
  EXPECT_TRUE(doc[1]["nonlocal"].is_null());
  EXPECT_EQ(doc[1]["status"], "skipped: a, \"b\"");
}

TEST(Threshold, NoSignChangeIsDomainError) {
  auto werner = [](double x) { return nlb::werner(x); };
  EXPECT_THROW(nlb::find_threshold(werner, 0.8, 0.9, 1e-3, nlb::SearchConfig::fast()),
               nlb::DomainError);
  EXPECT_THROW(nlb::find_threshold(werner, 0.9, 0.8, 1e-3, nlb::SearchConfig::fast()),
               nlb::ValidationError);
}

TEST(Threshold, FastWernerIsClose) {
  const auto r = nlb::find_threshold([](double x) { return nlb::werner(x); }, 0.6, 0.8, 1e-3,
                                     nlb::SearchConfig::fast());
  EXPECT_LE(r.hi - r.lo, 1e-3);
  EXPECT_NEAR(r.value, 0.7054, 0.01);
  EXPECT_FALSE(r.kernel_variant.has_value());
}

TEST(Cli, BoundWernerFamily) {
  const auto r = run_cli("bound --family werner --x 0.9");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["nonlocal"], true);
  EXPECT_NEAR(doc["bound"].get<double>(), 1.4176 * 0.9, 2e-3);
  EXPECT_TRUE(doc.contains("chsh"));
  EXPECT_TRUE(doc.contains("best_region"));

  const auto zero = run_cli("bound --family werner --x 0.0 --fast");
  ASSERT_EQ(zero.code, 0);
  const auto z = nlohmann::json::parse(zero.out);
  EXPECT_EQ(z["bound"], 0.0);
  EXPECT_EQ(z["nonlocal"], false);
}

TEST(Cli, BoundFromStateFile) {
  const fs::path p = scratch("singlet.json");
  write_file(p, nlb::density_to_json(nlb::werner(1.0)));
  const auto r = run_cli("bound --state " + p.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["bound"].get<double>(), 1.4176, 2e-3);
}

TEST(Cli, ValidationFailuresExitTwo) {
  const fs::path bad = scratch("bad.json");
  write_file(bad, "{\"dim_a\": 2, \"dim_b\": 2, \"entries\": [");
  EXPECT_EQ(run_cli("bound --state " + bad.string()).code, 2);
  EXPECT_EQ(run_cli("bound --family werner --x 1.5").code, 2);
  EXPECT_EQ(run_cli("bound --family nosuch").code, 2);
  EXPECT_EQ(run_cli("bound --family werner --quad-phi 2").code, 2);
  EXPECT_EQ(run_cli("scan --family werner --x-steps 2 --fast --out /nonexistent/dir/x.csv").code,
            2);
}

TEST(Cli, ThresholdWithoutSignChangeExitsThree) {
  EXPECT_EQ(run_cli("threshold --family werner --lo 0.8 --hi 0.9 --fast").code, 3);
}

TEST(Cli, ScanWritesCsvAndJson) {
  const fs::path csv = scratch("w.csv");
  ASSERT_EQ(run_cli("scan --family werner --x-steps 3 --fast --out " + csv.string()).code, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,bound_t1,bound_chsh,nonlocal,status");

  const auto j = run_cli("scan --family bell-diagonal --p-steps 3 --fix-p1 1 --fix-p2 1 "
                         "--fast --format json");
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[0]["p3"], -1.0);
  EXPECT_EQ(doc[0]["status"].get<std::string>().rfind("skipped", 0), 0u);
}

TEST(Cli, ChshReport) {
  const auto r = run_cli("chsh --family werner --x 0.5");
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["chsh"].get<double>(), 0.5 * std::sqrt(2.0), 1e-8);
  EXPECT_EQ(doc["nonlocal"], false);
}
