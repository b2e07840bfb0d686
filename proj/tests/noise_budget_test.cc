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

#include "cvqkd/noise_budget.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cvqkd/errors.h"

namespace cvqkd {
namespace {

constexpr double kT25 = 0.31622776601683794;  // 10^-0.5

double Rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

DetectorParams ExperimentDetector() { return {0.56, 0.042}; }

TEST(DriftVarianceTest, Examples) {
  EXPECT_EQ(DriftVariance(3e5, 1e5, 0.0), 0.0);
  EXPECT_NEAR(DriftVariance(1e5, 1e5, 1e-8), 0.0125664, 1e-7);
  EXPECT_EQ(DriftVariance(2e5, 7e4, 3e-9), DriftVariance(7e4, 2e5, 3e-9));
}

TEST(ReferenceNoiseTest, IdealCase) {
  const ReferenceNoise r = ComputeReferenceNoise(1.0, 0.0, {1.0, 0.0});
  EXPECT_EQ(r.chi_untrusted, 0.0);
  EXPECT_EQ(r.chi_trusted, 1.0);
  EXPECT_EQ(r.chi_total, 1.0);
}

TEST(ReferenceNoiseTest, ExperimentAndSimulationValues) {
  const ReferenceNoise e = ComputeReferenceNoise(kT25, 0.002, ExperimentDetector());
  EXPECT_NEAR(e.chi_trusted, 2.7214286, 1e-7);
  EXPECT_NEAR(e.chi_untrusted, 2.1642777, 1e-7);
  EXPECT_NEAR(e.chi_total, 10.7701904, 1e-7);
  const ReferenceNoise s = ComputeReferenceNoise(kT25, 0.002, {0.5, 0.1});
  EXPECT_NEAR(s.chi_total, 12.916, 1e-3);
}

TEST(ReferenceNoiseTest, RejectsBadTransmittance) {
  EXPECT_THROW(ComputeReferenceNoise(0.0, 0.002, {}), DomainError);
  EXPECT_THROW(ComputeReferenceNoise(-0.1, 0.002, {}), DomainError);
  EXPECT_THROW(ComputeReferenceNoise(1.1, 0.002, {}), DomainError);
}

TEST(ErrorVarianceTest, Examples) {
  ReferenceNoise r;
  r.chi_total = 10.770234;
  EXPECT_NEAR(ErrorVariance(r, 1000), 0.01177023, 1e-8);
  r.chi_total = 0;
  EXPECT_EQ(ErrorVariance(r, 1), 1.0);
  r.chi_total = 10.770234;
  EXPECT_LE(ErrorVariance(r, 1e13), 1e-11);
  EXPECT_THROW(ErrorVariance(r, 0), DomainError);
}

TEST(EstVarianceTest, SumsComponents) {
  EXPECT_EQ(EstVariance(0, 0, 0.3).v_est, 0.3);
  EXPECT_NEAR(EstVariance(0.01, 0.002, 0.0118).v_est, 0.0238, 1e-15);
  EXPECT_DOUBLE_EQ(EstVariance(0.0118, 0.01, 0.002).v_est,
                   EstVariance(0.01, 0.002, 0.0118).v_est);
}

TEST(PhaseNoiseTest, Examples) {
  EXPECT_EQ(PhaseNoiseExact(4, 0), 0.0);
  EXPECT_NEAR(PhaseNoiseExact(4, 0.0125664), 0.0501080, 1e-7);
  EXPECT_NEAR(PhaseNoiseExact(3.073, 0.0117702), 0.0360637, 1e-7);
  EXPECT_EQ(PhaseNoiseLinear(4, 0), 0.0);
  EXPECT_NEAR(PhaseNoiseLinear(4, 0.0125664), 0.0502656, 1e-12);
}

TEST(PhaseNoiseTest, ExactNeverExceedsLinear) {
  for (double v_a : {0.5, 3.073, 4.0, 20.0}) {
    for (double x = 0; x <= 5; x += 0.01) {
      EXPECT_LE(PhaseNoiseExact(v_a, x), PhaseNoiseLinear(v_a, x));
    }
  }
  EXPECT_NEAR(PhaseNoiseExact(4, 1e-6) / PhaseNoiseLinear(4, 1e-6), 1.0, 1e-6);
}

TEST(SplitErrorNoiseTest, Examples) {
  const ErrorNoiseSplit e = SplitErrorNoise(3.073, 1000, kT25, 0.002,
                                            ExperimentDetector());
  EXPECT_NEAR(e.trusted, 0.0083630, 1e-7);
  EXPECT_NEAR(e.untrusted, 0.0097238, 1e-7);
  EXPECT_NEAR(SplitErrorNoise(4, 1000, kT25, 0.002, {0.5, 0.1}).trusted,
              0.0136, 1e-15);
  const ErrorNoiseSplit unit = SplitErrorNoise(1, 1, 1, 0, {1, 0});
  EXPECT_EQ(unit.untrusted, 1.0);
  EXPECT_EQ(unit.trusted, 1.0);
  EXPECT_THROW(SplitErrorNoise(1, 0, 0.5, 0, {}), DomainError);
  EXPECT_THROW(SplitErrorNoise(1, 1, 0, 0, {}), DomainError);
}

TEST(GridIdentityTest, ReferenceAndErrorSplits) {
  int points = 0;
  for (double t : {0.01, 0.05, 0.1, 0.3, 0.5, 0.8, 1.0}) {
    for (double eta : {0.1, 0.3, 0.56, 0.8, 1.0}) {
      for (double v_el : {0.0, 0.042, 0.1, 0.25, 0.5}) {
        const DetectorParams det{eta, v_el};
        const ReferenceNoise r = ComputeReferenceNoise(t, 0.002, det);
        const double direct = 1 / t - 1 + 0.002 + (2 - eta + 2 * v_el) / (eta * t);
        EXPECT_LE(Rel(r.chi_total, direct), 1e-12);
        EXPECT_LE(Rel(r.chi_untrusted + r.chi_trusted / t, r.chi_total), 1e-12);

        const double v_a = 4, e_r2 = 1000;
        const ErrorNoiseSplit s = SplitErrorNoise(v_a, e_r2, t, 0.002, det);
        EXPECT_LE(Rel(s.untrusted + s.trusted / t,
                      v_a * (r.chi_total + 1) / e_r2),
                  1e-12);
        ++points;
      }
    }
  }
  EXPECT_EQ(points, 175);
}

TEST(AliceReferenceIntensityTest, Models) {
  EXPECT_EQ(AliceReferenceIntensity(1000, 1, std::nullopt,
                                    AliceReferenceModel::kLossCompensated),
            1000.0);
  EXPECT_NEAR(AliceReferenceIntensity(1000, kT25, std::nullopt,
                                      AliceReferenceModel::kLossCompensated),
              3162.278, 1e-3);
  EXPECT_EQ(AliceReferenceIntensity(1000, kT25, std::nullopt,
                                    AliceReferenceModel::kSameAsBob),
            1000.0);
  EXPECT_EQ(AliceReferenceIntensity(1000, kT25, 5000.0,
                                    AliceReferenceModel::kLossCompensated),
            5000.0);
  EXPECT_THROW(AliceReferenceIntensity(1000, 0, std::nullopt,
                                       AliceReferenceModel::kSameAsBob),
               DomainError);
}

TEST(HardwareNoiseTest, Modulation) {
  EXPECT_NEAR(ModulationNoise(4, 40), 0.004, 1e-15);
  EXPECT_NEAR(ModulationNoise(3.073, 40), 0.003073, 1e-15);
  EXPECT_EQ(ModulationNoise(4, std::numeric_limits<double>::infinity()), 0.0);
}

TEST(HardwareNoiseTest, Leakage) {
  EXPECT_EQ(LeakageNoise(0, 40, 30), 0.0);
  EXPECT_NEAR(LeakageNoise(3162.278, 40, 30), 6.3246e-4, 1e-8);
  EXPECT_DOUBLE_EQ(LeakageNoise(2 * 1234.5, 40, 30),
                   2 * LeakageNoise(1234.5, 40, 30));
}

TEST(HardwareNoiseTest, Adc) {
  EXPECT_NEAR(AdcNoise(4, 10), 40.0 / 12288.0, 1e-16);
  EXPECT_NEAR(AdcNoise(4, 10), 0.0032552, 1e-7);
  EXPECT_EQ(AdcNoise(0, 10), 0.0);
  for (int n = 1; n < 30; ++n) {
    EXPECT_DOUBLE_EQ(AdcNoise(4, n + 1), AdcNoise(4, n) / 2);
  }
}

TEST(TotalBudgetTest, SimulationRegimeAt25Km) {
  ScenarioConfig c;
  c.reference.alice_model = AliceReferenceModel::kLossCompensated;
  const NoiseBudget b = TotalBudget(c);
  EXPECT_NEAR(b.xi_rest, 0.01789, 1e-5);
  EXPECT_NEAR(b.xi_error, 0.05566, 1e-5);
  EXPECT_NEAR(b.xi_tot, 0.0735, 1e-4);

  c.reference.alice_model = AliceReferenceModel::kSameAsBob;
  const NoiseBudget same = TotalBudget(c);
  EXPECT_NEAR(same.xi_le, 2e-4, 1e-15);
  const double chi = 1 / kT25 - 1 + 0.002 + 1.7 / 0.5 / kT25;
  EXPECT_NEAR(same.xi_tot,
              0.01 + 0.004 + 2e-4 + 40.0 / 12288 + 4 * (chi + 1) / 1000, 1e-12);
}

TEST(TotalBudgetTest, StructuralIdentities) {
  ScenarioConfig c;
  c.reference.dnu_a = 1e4;
  c.reference.dnu_b = 2e4;
  c.reference.dt = 1e-8;
  c.reference.v_channel = 0.001;
  for (double d = 0; d <= 100; d += 5) {
    c.channel.distance_km = d;
    const NoiseBudget b = TotalBudget(c);
    EXPECT_DOUBLE_EQ(b.xi_rest, b.xi0 + b.xi_am + b.xi_le + b.xi_adc);
    EXPECT_DOUBLE_EQ(b.xi_tot, b.xi_rest + b.xi_phase);
    EXPECT_LE(Rel(b.xi_error_u + b.xi_error_t / b.t, b.xi_error), 1e-12);
    EXPECT_LE(Rel(b.xi_drift + b.xi_channel + b.xi_error, b.xi_phase), 1e-12);
    EXPECT_DOUBLE_EQ(b.xi_drift, c.modulation.v_a * b.phase.v_drift);
    EXPECT_DOUBLE_EQ(b.xi_channel, c.modulation.v_a * 0.001);
    for (double x : {b.xi0, b.xi_am, b.xi_le, b.xi_adc, b.xi_drift,
                     b.xi_channel, b.xi_error_u, b.xi_error_t}) {
      EXPECT_GE(x, 0.0);
    }
  }
}

TEST(TotalBudgetTest, ExactMappingSplitsInProportion) {
  ScenarioConfig c;
  c.mapping = PhaseNoiseMapping::kExact;
  c.reference.dnu_a = 1e5;
  c.reference.dnu_b = 1e5;
  c.reference.dt = 1e-8;
  const NoiseBudget b = TotalBudget(c);
  EXPECT_DOUBLE_EQ(b.xi_phase,
                   PhaseNoiseExact(c.modulation.v_a, b.phase.v_est));
  EXPECT_LE(Rel(b.xi_drift + b.xi_channel + b.xi_error, b.xi_phase), 1e-12);
  EXPECT_LE(Rel(b.xi_error_u + b.xi_error_t / b.t, b.xi_error), 1e-12);
  EXPECT_LE(Rel(b.xi_drift / b.xi_error, b.phase.v_drift / b.phase.v_error),
            1e-12);
  c.mapping = PhaseNoiseMapping::kLinear;
  EXPECT_LT(b.xi_tot, TotalBudget(c).xi_tot);
}

TEST(TotalBudgetTest, IdealHardwareAtZeroLengthLeavesOnlyReferenceError) {
  ScenarioConfig c;
  c.channel.distance_km = 0;
  c.channel.epsilon0 = 0;
  c.hardware.xi0 = 0;
  c.hardware.d_db = std::numeric_limits<double>::infinity();
  c.hardware.r_e_db = std::numeric_limits<double>::infinity();
  c.hardware.n_adc = 4096;
  const NoiseBudget b = TotalBudget(c);
  EXPECT_GT(b.xi_error, 0.0);
  EXPECT_EQ(b.xi_tot, b.xi_error);
}

TEST(TotalBudgetTest, NondecreasingInDistance) {
  ScenarioConfig c;
  double previous = 0;
  for (double d = 0; d <= 150; d += 0.5) {
    c.channel.distance_km = d;
    const double xi = TotalBudget(c).xi_tot;
    EXPECT_GE(xi, previous) << d;
    previous = xi;
  }
}

TEST(TotalBudgetTest, MeasuredMode) {
  const NoiseBudget b = TotalBudget(ExperimentConfig());
  EXPECT_TRUE(b.measured);
  EXPECT_EQ(b.xi_tot, 0.056);
  EXPECT_NEAR(b.xi_error_t, 0.0083630, 1e-7);
  EXPECT_EQ(b.xi_am, 0.0);
  EXPECT_EQ(b.xi_le, 0.0);
  EXPECT_DOUBLE_EQ(b.xi_rest, 0.056 - b.xi_phase);

  ScenarioConfig low = ExperimentConfig();
  low.measured_xi_tot = 0.01;
  EXPECT_THROW(TotalBudget(low), InconsistentBudget);
}

TEST(AnchorMeasuredNoiseTest, ReproducesTheMeasurementAtItsDistance) {
  const ScenarioConfig measured = ExperimentConfig();
  const ScenarioConfig anchored = AnchorMeasuredNoise(measured);
  EXPECT_FALSE(anchored.measured_xi_tot.has_value());
  EXPECT_NEAR(TotalBudget(anchored).xi_tot, 0.056, 1e-15);
  EXPECT_EQ(AnchorMeasuredNoise(ScenarioConfig{}), ScenarioConfig{});
}

}  // namespace
}  // namespace cvqkd
