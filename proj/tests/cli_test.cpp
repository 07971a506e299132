// Copyright 2026 The qswitch Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qswitch/measures.hpp"
#include "switchsim/commands.hpp"

namespace switchsim {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "switchsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(Cli, Fig2Csv) {
  const auto r = invoke({"fig2", "--gamma", "1.0", "--steps", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 51u);
  EXPECT_EQ(rows[0], "t,gamma,deviation");
  EXPECT_EQ(rows[1], "0,1,0");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, Fig2PeakMatchesClosedForm) {
  RunConfig config;
  config.gammas = {1.0};
  const auto result = run_fig2(config);
  ASSERT_EQ(result.table.size(), 500u);
  double peak = 0.0, expected = 0.0;
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const double t = result.table.number(i, "t");
    peak = std::max(peak, result.table.number(i, "deviation"));
    expected = std::max(expected, std::exp(-4 * t) - qswitch::switched_decay_factor(t, 1.0));
  }
  EXPECT_NEAR(peak, expected, 1e-10);
  EXPECT_LE(result.table.number(499, "deviation"), 1e-6);
}

TEST(Cli, DefaultGammasForFig2) {
  const auto result = run_fig2(RunConfig{});
  EXPECT_EQ(result.table.size(), 1500u);
  EXPECT_EQ(result.failures, 0);
}

TEST(Cli, Fig3WarnsAboutClosedFormGap) {
  const auto r = invoke({"fig3", "--p", "0.5", "--q", "0.5", "--steps", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("\"expression\":\"C_pq\""), std::string::npos);
  EXPECT_EQ(lines(r.out)[0], "t,gamma,p,q,info_loss_switch,qsm,info_loss_ergodic,deviation");
}

TEST(Cli, Fig4DefaultConfigs) {
  const auto r = invoke({"fig4", "--steps", "10"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 31u);
}

TEST(Cli, JsonOutput) {
  const auto r = invoke({"qsi", "--gamma", "0.5", "--steps", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  EXPECT_EQ(j[0]["config"], "ideal");
  EXPECT_DOUBLE_EQ(j[0]["gamma"].get<double>(), 0.5);
}

TEST(Cli, Fig5OnsetAlignsWithCharacteristicTime) {
  RunConfig config;
  config.gammas = {1.0};
  config.grid.steps = 101;
  const auto result = run_fig5(config);
  EXPECT_EQ(result.failures, 0);
  const double t_minus = qswitch::characteristic_time(1.0);
  double first_g = -1.0, first_b = -1.0;
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const double t = result.table.number(i, "t");
    if (first_g < 0 && result.table.number(i, "g_rhp") > 1e-6) first_g = t;
    if (first_b < 0 && result.table.number(i, "blp_rate") > 1e-9) first_b = t;
  }
  const double step = 5.0 / 100.0;
  EXPECT_GT(first_g, t_minus);
  EXPECT_LE(first_g, t_minus + step);
  EXPECT_NEAR(first_g, first_b, step + 1e-12);
}

TEST(Cli, StatementsPassAndAreDeterministic) {
  const auto a = invoke({"statements", "--dims", "2,3", "--trials", "3", "--seed", "11"});
  const auto b = invoke({"statements", "--dims", "2,3", "--trials", "3", "--seed", "11"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = lines(a.out);
  EXPECT_EQ(rows.size(), 1u + 2 * 5 * 6);
  // d = 2 uniform spec under the ideal switch.
  EXPECT_NE(a.out.find("2,uniform,ideal,"), std::string::npos);
  EXPECT_NE(a.out.find(",0.625,0.625,1"), std::string::npos);
  const auto c = invoke({"statements", "--dims", "2", "--trials", "3", "--seed", "12"});
  EXPECT_NE(lines(c.out)[13], lines(a.out)[13]);
}

TEST(Cli, NonmarkovTable) {
  RunConfig config;
  config.gammas = {1.0};
  const auto result = run_nonmarkov(config);
  ASSERT_EQ(result.table.size(), 1u);
  EXPECT_NEAR(result.table.number(0, "q_s_infinity"), 0.1, 1e-8);
  EXPECT_NEAR(result.table.number(0, "t_minus"), std::log(3.0 + 2.0 * std::sqrt(3.0)) / 4.0, 1e-11);
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "switchsim_cli_test.csv";
  const auto r = invoke({"fig2", "--gamma", "1", "--steps", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,gamma,deviation");
  std::filesystem::remove(path);
}

TEST(Cli, ArgumentAndIoErrorsExitWithTwo) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"fig9"}).code, 2);
  EXPECT_EQ(invoke({"fig2", "--gamma", "-1"}).code, 2);
  EXPECT_EQ(invoke({"fig2", "--steps", "1"}).code, 2);
  EXPECT_EQ(invoke({"fig3", "--p", "1.5", "--q", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"fig3", "--p", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"qsi", "--p", "0.5", "--q", "0.5", "--q1", "0.2", "--q2", "0.3"}).code, 2);
  EXPECT_EQ(invoke({"fig2", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"statements", "--dims", "7"}).code, 2);
  EXPECT_EQ(invoke({"fig2", "--steps", "3", "--out", "/nonexistent-dir/x.csv"}).code, 2);
}

TEST(Cli, HelpExitsWithZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("switchsim"), std::string::npos);
}

TEST(Table, FormatsTwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  Table t({"a", "b"});
  t.add_row({1.5, std::string("x,y")});
  std::ostringstream os;
  write_csv(t, os);
  EXPECT_EQ(os.str(), "a,b\n1.5,\"x,y\"\n");
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace switchsim
