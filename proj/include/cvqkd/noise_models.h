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

#ifndef CVQKD_NOISE_MODELS_H_
#define CVQKD_NOISE_MODELS_H_

#include "cvqkd/noise_budget.h"
#include "cvqkd/params.h"

namespace cvqkd {

// Added noises entering the covariance matrix. chi_line is referred to the
// channel input, chi_het to Bob's input, and
// chi_tot = chi_line + chi_het / t_used.
struct AddedNoise {
  double chi_line = 0;
  double chi_het = 0;
  double chi_tot = 0;
  ModelKind model = ModelKind::kConventional;
  double t_used = 1;
};

// xi_tot - xi_error_t / T. Throws InconsistentBudget when the trusted part
// exceeds the total.
double TrustedExcessNoise(double xi_tot, double xi_error_t, double t);

// Splits the budget into line and detection noise for `model`.
//
// Every model yields the same chi_tot; only the share attributed to Bob's
// station (and therefore excluded from Eve's information) changes.
AddedNoise ComputeAddedNoise(const NoiseBudget& budget,
                             const DetectorParams& detector, double t,
                             ModelKind model);

}  // namespace cvqkd

#endif  // CVQKD_NOISE_MODELS_H_
