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

// Residual phase noise after reference-based phase compensation and the
// excess-noise budget of a pilot-multiplexed receiver.
//
// Every excess-noise term is referred to the channel input except
// xi_error_t, which is referred to Bob's input (divide by T to refer it to
// the channel input).

#ifndef CVQKD_NOISE_BUDGET_H_
#define CVQKD_NOISE_BUDGET_H_

#include <optional>

#include "cvqkd/params.h"

namespace cvqkd {

// Relative phase drift between signal and reference at emission,
// 2 pi (dnu_a + dnu_b) |t_R - t_S|.
double DriftVariance(double dnu_a, double dnu_b, double dt);

// Noise added on the reference by loss, channel excess noise and Bob's
// detector, split into the part Eve can influence and the part Bob
// calibrates locally.
struct ReferenceNoise {
  double chi_total = 0;      // channel referred
  double chi_untrusted = 0;  // 1/T - 1 + epsilon0
  double chi_trusted = 0;    // (2 - eta + 2 v_el) / eta, Bob referred
  double t = 1;              // transmittance used to build the split
};

// (2 - eta + 2 v_el) / eta: heterodyne detection noise referred to Bob's
// input.
double HeterodyneNoise(const DetectorParams& detector);

// Throws DomainError if t is not in (0, 1].
ReferenceNoise ComputeReferenceNoise(double t, double epsilon0,
                                     const DetectorParams& detector);

// Variance of the reference phase estimator, (chi + 1) / E_R^2.
double ErrorVariance(const ReferenceNoise& ref, double e_r2_bob);

struct PhaseVariance {
  double v_drift = 0;
  double v_channel = 0;
  double v_error = 0;
  double v_est = 0;  // sum of the three
};

PhaseVariance EstVariance(double v_drift, double v_channel, double v_error);

// 2 V_A (1 - exp(-V_est / 2)).
double PhaseNoiseExact(double v_a, double v_est);
// V_A V_est, the small-variance limit of PhaseNoiseExact.
double PhaseNoiseLinear(double v_a, double v_est);

struct ErrorNoiseSplit {
  double untrusted = 0;  // V_A (1 + T eps0) / (T E_R^2), channel referred
  double trusted = 0;    // V_A (2 - eta + 2 v_el) / (eta E_R^2), Bob referred
};

ErrorNoiseSplit SplitErrorNoise(double v_a, double e_r2_bob, double t,
                                double epsilon0,
                                const DetectorParams& detector);

// Reference intensity leaving Alice: the override when present, otherwise
// derived from Bob's intensity according to `model`.
double AliceReferenceIntensity(double e_r2_bob, double t,
                               std::optional<double> override_value,
                               AliceReferenceModel model);

// Amplitude-modulator extinction noise with E_Smax^2 = 10 V_A.
double ModulationNoise(double v_a, double d_db);

// Reference-to-signal photon leakage, 2 E_R^A^2 10^(-(R_e + R_p)/10) with
// the extinction ratios combined in dB.
double LeakageNoise(double e_r2_alice, double r_e_db, double r_p_db);

// ADC quantization noise, 10 V_A / (12 * 2^n).
double AdcNoise(double v_a, int n_adc);

struct NoiseBudget {
  double xi0 = 0;
  double xi_am = 0;
  double xi_le = 0;
  double xi_adc = 0;
  double xi_rest = 0;
  double xi_drift = 0;
  double xi_channel = 0;
  double xi_error = 0;
  double xi_error_u = 0;
  double xi_error_t = 0;  // Bob referred
  double xi_phase = 0;
  double xi_tot = 0;

  double t = 1;
  PhaseVariance phase;
  ReferenceNoise reference;
  // True when xi_tot came from a measurement. Then xi_rest is the inferred
  // remainder xi_tot - xi_phase and the hardware terms are not composed.
  bool measured = false;
};

// Composes the full budget for `config`.
//
// Under the exact mapping the phase penalty is apportioned to drift, channel
// and error terms in proportion to their variances, and xi_error is split
// between untrusted and trusted parts in proportion (chi^u + 1) : chi^T / T.
// Under the linear mapping both rules reduce to V_A times each variance.
//
// Throws DomainError for a non-positive transmittance and InconsistentBudget
// when a measured xi_tot is smaller than the modeled phase noise.
NoiseBudget TotalBudget(const ScenarioConfig& config);

// For a config with a measured xi_tot: returns an equivalent composed config
// whose hardware terms are ideal and whose system noise xi0 carries the
// inferred remainder xi_rest at the measured distance. Sweeping the result
// over distance keeps the hardware noise fixed while the phase noise follows
// the channel. Configs without a measurement are returned unchanged.
ScenarioConfig AnchorMeasuredNoise(const ScenarioConfig& config);

}  // namespace cvqkd

#endif  // CVQKD_NOISE_BUDGET_H_
