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

#include "cvqkd/attack.h"

#include <cmath>
#include <numbers>

#include "cvqkd/errors.h"

namespace cvqkd {

namespace {

// Extra reference gain Eve obtains, in dB.
double GainDb(const AttackParams& atk, double distance_km) {
  return (atk.alpha_std - atk.alpha_low) * distance_km;
}

}  // namespace

void ValidateAttack(const AttackParams& atk) {
  if (!(atk.alpha_low >= 0.0 && atk.alpha_low <= atk.alpha_std)) {
    throw ValidationError("alpha_low", "must lie in [0, alpha_std]");
  }
}

double AttackReferenceIntensity(double e_r2_bob, const AttackParams& atk,
                                double distance_km) {
  return e_r2_bob * std::pow(10.0, GainDb(atk, distance_km) / 10.0);
}

double AttackNoise(double xi_error_t, const AttackParams& atk,
                   double distance_km) {
  return -xi_error_t * std::expm1(-GainDb(atk, distance_km) / 10.0 *
                                  std::numbers::ln10);
}

AddedNoise AddedNoiseUnderAttack(const NoiseBudget& budget,
                                 const DetectorParams& detector, double t,
                                 const AttackParams& atk, double distance_km,
                                 bool monitored) {
  ValidateAttack(atk);
  AddedNoise out = ComputeAddedNoise(budget, detector, t, ModelKind::kTrusted);
  if (!monitored) return out;

  const double xi_attack = AttackNoise(budget.xi_error_t, atk, distance_km);
  out.chi_line += xi_attack / t;
  out.chi_het -= xi_attack;
  return out;
}

IntensityCheck CheckReferenceIntensity(double observed_e_r2,
                                       double calibrated_e_r2,
                                       double threshold) {
  if (!(calibrated_e_r2 > 0.0)) {
    throw DomainError("calibrated reference intensity must be positive");
  }
  IntensityCheck check;
  check.relative_deviation =
      std::abs(observed_e_r2 - calibrated_e_r2) / calibrated_e_r2;
  check.alarm = check.relative_deviation > threshold;
  return check;
}

}  // namespace cvqkd
