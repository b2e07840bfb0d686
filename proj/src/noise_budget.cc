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
#include <numbers>
#include <string>

#include "cvqkd/errors.h"

namespace cvqkd {

namespace {

void RequireTransmittance(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("transmittance must lie in (0, 1], got " +
                      std::to_string(t));
  }
}

void RequireIntensity(double e_r2) {
  if (!(e_r2 > 0.0)) {
    throw DomainError("reference intensity must be positive, got " +
                      std::to_string(e_r2));
  }
}

}  // namespace

double DriftVariance(double dnu_a, double dnu_b, double dt) {
  return 2.0 * std::numbers::pi * (dnu_a + dnu_b) * std::abs(dt);
}

double HeterodyneNoise(const DetectorParams& detector) {
  return (2.0 - detector.eta + 2.0 * detector.v_el) / detector.eta;
}

ReferenceNoise ComputeReferenceNoise(double t, double epsilon0,
                                     const DetectorParams& detector) {
  RequireTransmittance(t);
  ReferenceNoise ref;
  ref.t = t;
  ref.chi_untrusted = 1.0 / t - 1.0 + epsilon0;
  ref.chi_trusted = HeterodyneNoise(detector);
  ref.chi_total = ref.chi_untrusted + ref.chi_trusted / t;
  return ref;
}

double ErrorVariance(const ReferenceNoise& ref, double e_r2_bob) {
  RequireIntensity(e_r2_bob);
  return (ref.chi_total + 1.0) / e_r2_bob;
}

PhaseVariance EstVariance(double v_drift, double v_channel, double v_error) {
  return {v_drift, v_channel, v_error, v_drift + v_channel + v_error};
}

double PhaseNoiseExact(double v_a, double v_est) {
  // expm1 keeps full precision for tiny variances.
  return -2.0 * v_a * std::expm1(-v_est / 2.0);
}

double PhaseNoiseLinear(double v_a, double v_est) { return v_a * v_est; }

ErrorNoiseSplit SplitErrorNoise(double v_a, double e_r2_bob, double t,
                                double epsilon0,
                                const DetectorParams& detector) {
  RequireTransmittance(t);
  RequireIntensity(e_r2_bob);
  return {v_a * (1.0 + t * epsilon0) / (t * e_r2_bob),
          v_a * HeterodyneNoise(detector) / e_r2_bob};
}

double AliceReferenceIntensity(double e_r2_bob, double t,
                               std::optional<double> override_value,
                               AliceReferenceModel model) {
  RequireTransmittance(t);
  if (override_value) return *override_value;
  if (model == AliceReferenceModel::kSameAsBob) return e_r2_bob;
  return e_r2_bob / t;
}

double ModulationNoise(double v_a, double d_db) {
  return 10.0 * v_a * std::pow(10.0, -d_db / 10.0);
}

double LeakageNoise(double e_r2_alice, double r_e_db, double r_p_db) {
  return 2.0 * e_r2_alice * std::pow(10.0, -(r_e_db + r_p_db) / 10.0);
}

double AdcNoise(double v_a, int n_adc) {
  return 10.0 * v_a / (12.0 * std::ldexp(1.0, n_adc));
}

NoiseBudget TotalBudget(const ScenarioConfig& config) {
  const double t = Transmittance(config.channel);
  const double v_a = config.modulation.v_a;
  const auto& ref_params = config.reference;

  NoiseBudget b;
  b.t = t;
  b.reference =
      ComputeReferenceNoise(t, config.channel.epsilon0, config.detector);
  b.phase = EstVariance(
      DriftVariance(ref_params.dnu_a, ref_params.dnu_b, ref_params.dt),
      ref_params.v_channel, ErrorVariance(b.reference, ref_params.e_r2_bob));

  const ErrorNoiseSplit split =
      SplitErrorNoise(v_a, ref_params.e_r2_bob, t, config.channel.epsilon0,
                      config.detector);
  if (config.mapping == PhaseNoiseMapping::kLinear) {
    b.xi_drift = PhaseNoiseLinear(v_a, b.phase.v_drift);
    b.xi_channel = PhaseNoiseLinear(v_a, b.phase.v_channel);
    b.xi_error = PhaseNoiseLinear(v_a, b.phase.v_error);
    b.xi_error_u = split.untrusted;
    b.xi_error_t = split.trusted;
    b.xi_phase = PhaseNoiseLinear(v_a, b.phase.v_est);
  } else {
    b.xi_phase = PhaseNoiseExact(v_a, b.phase.v_est);
    if (b.phase.v_est > 0) {
      const double per_variance = b.xi_phase / b.phase.v_est;
      b.xi_drift = per_variance * b.phase.v_drift;
      b.xi_channel = per_variance * b.phase.v_channel;
      b.xi_error = per_variance * b.phase.v_error;
    }
    const double chi_plus_one = b.reference.chi_total + 1.0;
    b.xi_error_u = b.xi_error * (b.reference.chi_untrusted + 1.0) / chi_plus_one;
    b.xi_error_t = b.xi_error * b.reference.chi_trusted / chi_plus_one;
  }

  if (config.measured_xi_tot) {
    b.measured = true;
    b.xi_tot = *config.measured_xi_tot;
    b.xi_rest = b.xi_tot - b.xi_phase;
    if (b.xi_rest < 0) {
      throw InconsistentBudget(
          "measured xi_tot " + std::to_string(b.xi_tot) +
          " is below the modeled phase noise " + std::to_string(b.xi_phase));
    }
    return b;
  }

  const auto& hw = config.hardware;
  b.xi0 = hw.xi0;
  b.xi_am = ModulationNoise(v_a, hw.d_db);
  b.xi_le = LeakageNoise(AliceReferenceIntensity(ref_params.e_r2_bob, t,
                                                 ref_params.e_r2_alice_override,
                                                 ref_params.alice_model),
                         hw.r_e_db, hw.r_p_db);
  b.xi_adc = AdcNoise(v_a, hw.n_adc);
  b.xi_rest = b.xi0 + b.xi_am + b.xi_le + b.xi_adc;
  b.xi_tot = b.xi_rest + b.xi_phase;
  return b;
}

ScenarioConfig AnchorMeasuredNoise(const ScenarioConfig& config) {
  if (!config.measured_xi_tot) return config;
  const NoiseBudget at_measurement = TotalBudget(config);
  ScenarioConfig anchored = config;
  anchored.measured_xi_tot.reset();
  anchored.hardware.xi0 = at_measurement.xi_rest;
  anchored.hardware.d_db = std::numeric_limits<double>::infinity();
  anchored.hardware.r_e_db = std::numeric_limits<double>::infinity();
  // 2^n overflows to infinity, so the quantization term is exactly zero.
  anchored.hardware.n_adc = 4096;
  return anchored;
}

}  // namespace cvqkd
