// Copyright 2026 The CVQKD Phase Noise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvqkd/sweep.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cvqkd/errors.h"

namespace cvqkd {
namespace {

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> Fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

TEST(SweepDistancesTest, InclusiveGrid) {
  SweepSpec s;
  s.start_km = 0;
  s.stop_km = 1;
  s.step_km = 0.1;
  const auto d = SweepDistances(s);
  ASSERT_EQ(d.size(), 11u);
  EXPECT_DOUBLE_EQ(d.back(), 1.0);
}

TEST(SweepDistancesTest, StepLargerThanRangeGivesOnePoint) {
  SweepSpec s;
  s.start_km = 5;
  s.stop_km = 10;
  s.step_km = 50;
  EXPECT_EQ(SweepDistances(s), std::vector<double>{5.0});
}

TEST(ValidateSweepTest, Violations) {
  SweepSpec s;
  EXPECT_TRUE(ValidateSweep(s).empty());
  s.step_km = 0;
  EXPECT_EQ(ValidateSweep(s).at(0).field, "step_km");
  s = SweepSpec{};
  s.start_km = 10;
  s.stop_km = 5;
  EXPECT_EQ(ValidateSweep(s).at(0).field, "stop_km");
  s = SweepSpec{};
  s.models.clear();
  EXPECT_EQ(ValidateSweep(s).at(0).field, "models");
  EXPECT_THROW(RunSweep(ScenarioConfig{}, s), ValidationError);
}

TEST(RunSweepTest, MaximumDistancesAndRatios) {
  SweepSpec s;
  s.models = {ModelKind::kConventional, ModelKind::kTrusted,
              ModelKind::kAllErrorTrusted};
  const SweepResult r = RunSweep(ScenarioConfig{}, s);
  ASSERT_EQ(r.rows.size(), 101u);
  ASSERT_EQ(r.max_distance_km.size(), 3u);
  const double conv = r.max_distance_km[0].value();
  const double trusted = r.max_distance_km[1].value();
  const double all = r.max_distance_km[2].value();
  EXPECT_GE(trusted / conv, 1.65);
  EXPECT_GT(all, trusted);
  EXPECT_GE(r.rows[25].k[1] / r.rows[25].k[0], 1.60);

  // The bisection brackets the sign change to 0.01 km.
  const SweepColumn column{ModelKind::kConventional, false, "conventional"};
  EXPECT_GT(EvaluateColumn(ScenarioConfig{}, column, {}, true, conv).k, 0.0);
  EXPECT_LE(EvaluateColumn(ScenarioConfig{}, column, {}, true, conv + 0.01).k,
            0.0);
}

TEST(RunSweepTest, NoKeyAtStartGivesNoDistance) {
  SweepSpec s;
  s.start_km = 150;
  s.stop_km = 160;
  const SweepResult r = RunSweep(ScenarioConfig{}, s);
  EXPECT_FALSE(r.max_distance_km[0].has_value());
}

TEST(RunSweepTest, AttackColumnsAndLabels) {
  SweepSpec s;
  s.stop_km = 40;
  s.include_attack = true;
  SweepResult r = RunSweep(ScenarioConfig{}, s);
  ASSERT_EQ(r.columns.size(), 3u);
  EXPECT_EQ(r.columns[2].label, "trusted_attacked");
  for (const auto& row : r.rows) {
    EXPECT_LE(row.k[0], row.k[2]) << row.distance_km;
    EXPECT_LE(row.k[2], row.k[1]) << row.distance_km;
  }
  EXPECT_FALSE(r.rows[0].alarm);
  EXPECT_TRUE(r.rows[25].alarm);

  s.monitored = false;
  r = RunSweep(ScenarioConfig{}, s);
  EXPECT_EQ(r.columns[2].label, "trusted_attacked_insecure_diagnostic");

  s.monitored = true;
  s.attack.alpha_low = 0.2;
  r = RunSweep(ScenarioConfig{}, s);
  for (const auto& row : r.rows) EXPECT_EQ(row.k[2], row.k[1]);
}

TEST(RunSweepTest, MeasuredConfigIsAnchoredAtItsDistance) {
  SweepSpec s;
  s.start_km = 0;
  s.stop_km = 50;
  s.step_km = 25;
  const SweepResult r = RunSweep(ExperimentConfig(), s);
  EXPECT_NEAR(r.rows[1].xi_tot, 0.056, 1e-15);
  EXPECT_NEAR(r.rows[1].key[0], 4.559967e6, 1.0);
  EXPECT_LT(r.rows[0].xi_tot, r.rows[1].xi_tot);
  EXPECT_LT(r.rows[1].xi_tot, r.rows[2].xi_tot);
}

TEST(WriteCsvTest, HeaderMatchesRows) {
  SweepSpec s;
  s.stop_km = 10;
  s.eigenvalues = true;
  s.include_attack = true;
  std::ostringstream out;
  WriteCsv(RunSweep(ScenarioConfig{}, s), out);
  const auto lines = Lines(out.str());
  ASSERT_EQ(lines.size(), 12u);
  const auto header = Fields(lines[0]);
  EXPECT_EQ(header[0], "distance_km");
  EXPECT_EQ(header[5], "k_conventional");
  EXPECT_EQ(header[7], "lambda1_conventional");
  EXPECT_EQ(header.back(), "alarm");
  for (size_t i = 1; i < lines.size(); ++i) {
    EXPECT_EQ(Fields(lines[i]).size(), header.size());
  }
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}

TEST(WriteCsvTest, DeterministicAndLossless) {
  SweepSpec s;
  s.stop_km = 30;
  std::ostringstream a, b;
  const SweepResult r = RunSweep(ScenarioConfig{}, s);
  WriteCsv(r, a);
  WriteCsv(RunSweep(ScenarioConfig{}, s), b);
  EXPECT_EQ(a.str(), b.str());
  const auto lines = Lines(a.str());
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = Fields(lines[i]);
    const auto& row = r.rows[i - 1];
    EXPECT_NEAR(std::stod(f[0]), row.distance_km, 1e-9);
    EXPECT_NEAR(std::stod(f[2]) / row.xi_tot, 1.0, 1e-9);
    EXPECT_NEAR(std::stod(f[5]) / row.k[0], 1.0, 1e-9);
  }
}

TEST(FormatNumberTest, TwelveSignificantDigits) {
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(4559966.51137), "4559966.51137");
}

}  // namespace
}  // namespace cvqkd
