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

// Phase-reference intensity attack: Eve routes the reference through a
// lower-loss fiber, raising the intensity Bob receives and so lowering the
// trusted share of the phase noise. She spends the difference on extra
// attack noise on the signal while keeping Bob's total noise unchanged.

#ifndef CVQKD_ATTACK_H_
#define CVQKD_ATTACK_H_

#include "cvqkd/noise_budget.h"
#include "cvqkd/noise_models.h"
#include "cvqkd/params.h"

namespace cvqkd {

struct AttackParams {
  double alpha_std = 0.2;   // attenuation of the signal's fiber
  double alpha_low = 0.14;  // attenuation of Eve's reference fiber
};

// Throws ValidationError unless 0 <= alpha_low <= alpha_std.
void ValidateAttack(const AttackParams& atk);

// E_R^2 10^((alpha_std - alpha_low) L / 10).
double AttackReferenceIntensity(double e_r2_bob, const AttackParams& atk,
                                double distance_km);

// Reduction of the trusted term, xi_error_t (1 - 10^(-(alpha_std -
// alpha_low) L / 10)).
double AttackNoise(double xi_error_t, const AttackParams& atk,
                   double distance_km);

// Trusted-model added noise while the attack is running.
//
// monitored = true: Bob recalibrates xi_error_t with the intensity he
// actually observes, so the trusted term shrinks by xi_attack and the line
// noise grows by xi_attack / T. The result is a valid (secure) bound.
//
// monitored = false: Bob keeps the unattacked calibration. Since Eve holds
// the measured total fixed, Bob computes exactly the no-attack trusted
// split, which overstates the key. Diagnostic only; not a security bound.
AddedNoise AddedNoiseUnderAttack(const NoiseBudget& budget,
                                 const DetectorParams& detector, double t,
                                 const AttackParams& atk, double distance_km,
                                 bool monitored);

struct IntensityCheck {
  double relative_deviation = 0;  // |observed - calibrated| / calibrated
  bool alarm = false;             // deviation above threshold: stop the run
};

inline constexpr double kDefaultIntensityAlarmThreshold = 0.10;

// Compares the monitored reference intensity with its calibrated value.
// Advisory: callers decide whether to abort.
IntensityCheck CheckReferenceIntensity(
    double observed_e_r2, double calibrated_e_r2,
    double threshold = kDefaultIntensityAlarmThreshold);

}  // namespace cvqkd

#endif  // CVQKD_ATTACK_H_
