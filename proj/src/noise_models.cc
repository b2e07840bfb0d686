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

#include "cvqkd/noise_models.h"

#include <string>

#include "cvqkd/errors.h"

namespace cvqkd {

double TrustedExcessNoise(double xi_tot, double xi_error_t, double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("transmittance must lie in (0, 1]");
  }
  const double trusted = xi_error_t / t;
  if (xi_tot < trusted) {
    throw InconsistentBudget("trusted phase noise " + std::to_string(trusted) +
                             " exceeds total excess noise " +
                             std::to_string(xi_tot));
  }
  return xi_tot - trusted;
}

AddedNoise ComputeAddedNoise(const NoiseBudget& budget,
                             const DetectorParams& detector, double t,
                             ModelKind model) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("transmittance must lie in (0, 1]");
  }
  const double loss = 1.0 / t - 1.0;
  const double het = HeterodyneNoise(detector);

  AddedNoise out;
  out.model = model;
  out.t_used = t;
  switch (model) {
    case ModelKind::kConventional:
      out.chi_line = loss + budget.xi_tot;
      out.chi_het = het;
      break;
    case ModelKind::kTrusted:
      out.chi_line =
          loss + TrustedExcessNoise(budget.xi_tot, budget.xi_error_t, t);
      out.chi_het = het + budget.xi_error_t;
      break;
    case ModelKind::kAllErrorTrusted:
      // The channel-referred untrusted error term moves to Bob's input
      // (times T), alongside the trusted one.
      out.chi_line =
          loss + budget.xi_rest + budget.xi_drift + budget.xi_channel;
      out.chi_het = het + t * budget.xi_error_u + budget.xi_error_t;
      break;
  }
  // Every model only moves noise between the two terms, so chi_tot is
  // formed from the untouched budget. Mutual information then agrees
  // bitwise across models.
  out.chi_tot = loss + budget.xi_tot + het / t;
  return out;
}

}  // namespace cvqkd
