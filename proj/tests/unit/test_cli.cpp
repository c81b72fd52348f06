// Copyright 2026 The qbat Authors
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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbat/cli.hpp"
#include "qbat/errors.hpp"
#include "qbat/table.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qbat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qbat::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Cli, DischargeCsv) {
  const CliRun r = run({"discharge", "--bell", "10", "--samples", "5"});
  ASSERT_EQ(r.code, qbat::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_GE(ls.size(), 7u);
  EXPECT_EQ(ls[0].rfind("# discharge", 0), 0u);
  const auto header = std::find(ls.begin(), ls.end(), "t_J,charge_over_E0,ec_hbar_omega_J");
  ASSERT_NE(header, ls.end());
  EXPECT_EQ(ls.end() - header, 6);
  EXPECT_EQ((header + 1)->rfind("0,", 0), 0u);
  // Middle sample is tau_d where the beta_10 cell is fully discharged.
  std::istringstream mid(*(header + 3));
  std::string t, c;
  std::getline(mid, t, ',');
  std::getline(mid, c, ',');
  EXPECT_NEAR(std::stod(c), 1.0, 1e-12);
}

TEST(Cli, DischargeJson) {
  const CliRun r = run({"--format", "json", "discharge", "--bell", "11", "--samples", "3"});
  ASSERT_EQ(r.code, qbat::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"].get<std::string>().rfind("discharge", 0), 0u);
  ASSERT_EQ(j["rows"].size(), 3u);
  for (const auto& row : j["rows"]) EXPECT_NEAR(row["charge_over_E0"].get<double>(), 0.0, 1e-14);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"--seed", "7", "trap-scan", "--samples", "50"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, qbat::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("qbat_cli_out.csv");
  const CliRun r = run({"--output", path, "ncell", "--plan", "f,H,h"});
  ASSERT_EQ(r.code, qbat::kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto ls = lines(ss.str());
  EXPECT_NE(std::find(ls.begin(), ls.end(), "cell,action,energy_hbar_omega,energy_over_Eq"), ls.end());
  EXPECT_EQ(ls.back(), "3,total,3,3");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"discharge"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"discharge", "--bell", "22"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"discharge", "--bell", "00", "--nope"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"--omega", "-1", "discharge", "--bell", "00"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "discharge", "--bell", "00"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"ncell", "--plan", "h,z"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"adiabatic", "--jtau", "0"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"adiabatic", "--jtau", "5", "--schedule", "cubic"}).code, qbat::kExitUsage);
  const CliRun r = run({"--omega", "-1", "discharge", "--bell", "00"});
  EXPECT_NE(r.err.find("omega"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, qbat::kExitOk);
  EXPECT_NE(r.out.find("discharge"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const std::string path = temp_path("qbat_cfg.json");
  write_file(path, R"({"omega": 2.0, "format": "json"})");
  const CliRun r = run({"--config", path, "single-particle", "--samples", "3"});
  ASSERT_EQ(r.code, qbat::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NE(j["notes"][0].get<std::string>().find("omega = 2 "), std::string::npos) << j["notes"][0];
  EXPECT_NEAR(j["rows"][1]["charge_hbar_omega"].get<double>(), 2.0, 1e-12);

  const CliRun csv = run({"--config", path, "--format", "csv", "single-particle", "--samples", "3"});
  ASSERT_EQ(csv.code, qbat::kExitOk) << csv.err;
  EXPECT_EQ(csv.out.rfind("# ", 0), 0u);

  // A bad value from the file is overridden by the flag.
  write_file(path, R"({"omega": -1.0})");
  EXPECT_EQ(run({"--config", path, "ncell", "--plan", "h"}).code, qbat::kExitUsage);
  EXPECT_EQ(run({"--config", path, "--omega", "1", "ncell", "--plan", "h"}).code, qbat::kExitOk);
}

TEST(Cli, ConfigFileRejectsUnknownKeysAndTypes) {
  const std::string path = temp_path("qbat_bad.json");
  write_file(path, R"({"omegaa": 2.0})");
  EXPECT_THROW(qbat::load_run_config(path), qbat::ValidationError);
  EXPECT_EQ(run({"--config", path, "ncell", "--plan", "h"}).code, qbat::kExitUsage);
  write_file(path, R"({"omega": "two"})");
  EXPECT_THROW(qbat::load_run_config(path), qbat::ValidationError);
  write_file(path, "{not json");
  EXPECT_THROW(qbat::load_run_config(path), qbat::ValidationError);
  EXPECT_THROW(qbat::load_run_config(temp_path("does_not_exist.json")), qbat::ValidationError);
}

TEST(Cli, LoadRunConfigKeepsUnsetFields) {
  const std::string path = temp_path("qbat_partial.json");
  write_file(path, R"({"seed": 9, "j_coupling": 0.5})");
  qbat::RunConfig base;
  base.omega = 3.0;
  const qbat::RunConfig c = qbat::load_run_config(path, base);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.j_coupling, 0.5);
  EXPECT_EQ(c.omega, 3.0);
}

TEST(Cli, SubcommandsProduceTables) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"trap-check"},
           {"separable", "--grid", "5"},
           {"single-particle", "--samples", "4"},
           {"adiabatic", "--jtau", "5", "--samples", "3"},
           {"sweep-tau", "--from", "0", "--to", "5", "--points", "2"},
           {"discharge", "--bell", "11", "--gate", "full", "--qubit", "2", "--samples", "3"}}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, qbat::kExitOk) << args[0] << ": " << r.err;
    EXPECT_EQ(r.out.rfind("# " + args[0], 0), 0u) << r.out;
  }
}

TEST(Cli, SweepRowsCoverAllSchedules) {
  const CliRun r = run({"--format", "json", "sweep-tau", "--from", "0", "--to", "4", "--points", "2"});
  ASSERT_EQ(r.code, qbat::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 6u);
  EXPECT_NEAR(j["rows"][0]["charge_over_Cmax"].get<double>(), 0.0, 1e-15);
  EXPECT_EQ(j["rows"][5]["schedule"].get<std::string>(), "smoothstep");
}

TEST(Cli, SelftestSingleCriterion) {
  const CliRun r = run({"selftest", "--only", "AC-3"});
  EXPECT_EQ(r.code, qbat::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u) << r.out;
  EXPECT_EQ(ls[0].rfind("PASS  AC-3", 0), 0u) << ls[0];
  EXPECT_EQ(run({"selftest", "--only", "AC-99"}).code, qbat::kExitUsage);
}

TEST(Table, NumberFormatting) {
  EXPECT_EQ(qbat::format_number(-0.0), "0");
  EXPECT_EQ(qbat::format_number(0.1), "0.1");
  EXPECT_EQ(qbat::format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(qbat::format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(qbat::format_number(std::nan("")), "nan");
}

TEST(Table, RowWidthIsChecked) {
  qbat::Table t;
  t.columns = {"a", "b"};
  EXPECT_THROW(t.add_row({1.0}), qbat::ValidationError);
  t.add_row({1.0, std::string("x")});
  std::ostringstream os;
  qbat::write_csv(os, t);
  EXPECT_EQ(os.str(), "# \na,b\n1,x\n");
}
