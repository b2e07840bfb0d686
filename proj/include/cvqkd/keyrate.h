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

// Asymptotic secret key rate of Gaussian-modulated coherent states with
// heterodyne detection and reverse reconciliation, under collective attacks
// and a trusted-detector model.

#ifndef CVQKD_KEYRATE_H_
#define CVQKD_KEYRATE_H_

#include <array>
#include <span>

#include "cvqkd/noise_budget.h"
#include "cvqkd/noise_models.h"
#include "cvqkd/params.h"

namespace cvqkd {

using SymplecticSpectrum = std::array<double, 5>;

struct KeyRateBreakdown {
  double i_ab = 0;          // bits/pulse
  SymplecticSpectrum lambda{1, 1, 1, 1, 1};
  double chi_be = 0;        // bits/pulse
  double k = 0;             // bits/pulse, may be negative
  double key = 0;           // bits/s, f_rep * max(k, 0)
  ModelKind model = ModelKind::kConventional;
};

// Bosonic entropy (x+1) log2(x+1) - x log2(x), with G(0) = 0.
// Throws DomainError for x < 0.
double GEntropy(double x);

// log2((V + chi_tot) / (1 + chi_tot)).
double MutualInformation(double v, double chi_tot);

// Symplectic spectrum of the Eve-purification and the conditional state.
//
// The discriminants A^2 - 4B and C^2 - 4D are evaluated through their exact
// factorizations
//   A - 2 sqrt(B) = (V (1 - T) - T chi_line)^2
//   C - 2 sqrt(D) = (chi_het (V (1 - T) - T chi_line) + sqrt(B) - 1)^2
//                   / (T (V + chi_tot))^2
// so that near-pure states do not lose half their digits to cancellation;
// the smaller roots use Vieta's product. Radicands within -1e-9 of zero are
// clamped. Throws NonPhysical for a larger negative radicand or an
// eigenvalue below 1 - 1e-6; eigenvalues in [1 - 1e-6, 1) are reported as 1.
SymplecticSpectrum SymplecticEigenvalues(double v, double t, double chi_line,
                                         double chi_het, double chi_tot);

// G((l1-1)/2) + G((l2-1)/2) - G((l3-1)/2) - G((l4-1)/2) - G((l5-1)/2).
// Throws DomainError if any eigenvalue is below 1.
double HolevoBound(std::span<const double, 5> lambda);

// beta I_AB - chi_BE, not clamped.
double SecretKeyRate(double beta, double i_ab, double chi_be);

// Key rate for already assembled added noise.
KeyRateBreakdown KeyRateFromAddedNoise(const ModulationParams& modulation,
                                       const AddedNoise& added);

struct KeyRateReport {
  double transmittance = 1;
  NoiseBudget budget;
  AddedNoise added;
  KeyRateBreakdown rate;
};

// Transmittance, budget, added noise, mutual information, Holevo bound and
// throughput for `model` (config.model is ignored).
KeyRateReport EvaluateKeyRate(const ScenarioConfig& config, ModelKind model);

}  // namespace cvqkd

#endif  // CVQKD_KEYRATE_H_
