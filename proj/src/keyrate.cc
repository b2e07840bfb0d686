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

#include "cvqkd/keyrate.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cvqkd/errors.h"

namespace cvqkd {

namespace {

constexpr double kRadicandTolerance = 1e-9;
constexpr double kEigenvalueTolerance = 1e-6;

double CheckedRadicand(double value, const char* name) {
  if (value < -kRadicandTolerance) {
    throw NonPhysical(std::string("negative radicand ") + name + " = " +
                      std::to_string(value));
  }
  return std::max(value, 0.0);
}

// Roots of l^4 - sum l^2 + product = 0, returned as (larger, smaller).
std::pair<double, double> RootPair(double sum, double product,
                                   double discriminant) {
  const double big2 = 0.5 * (sum + std::sqrt(discriminant));
  const double small2 = big2 > 0 ? product / big2 : 0.0;
  return {std::sqrt(big2), std::sqrt(small2)};
}

double CheckedEigenvalue(double lambda) {
  if (!(lambda >= 1.0 - kEigenvalueTolerance)) {
    throw NonPhysical("symplectic eigenvalue " + std::to_string(lambda) +
                      " below 1");
  }
  return std::max(lambda, 1.0);
}

}  // namespace

double GEntropy(double x) {
  if (x < 0) throw DomainError("G(x) requires x >= 0");
  if (x == 0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double MutualInformation(double v, double chi_tot) {
  return std::log2((v + chi_tot) / (1.0 + chi_tot));
}

SymplecticSpectrum SymplecticEigenvalues(double v, double t, double chi_line,
                                         double chi_het, double chi_tot) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("transmittance must lie in (0, 1]");
  }
  // The factorized discriminants rely on this identity.
  if (std::abs(chi_tot - (chi_line + chi_het / t)) >
      1e-9 * std::max(1.0, std::abs(chi_tot))) {
    throw DomainError("chi_tot must equal chi_line + chi_het / T");
  }
  const double sqrt_b = t * (v * chi_line + 1.0);
  const double a = v * v * (1.0 - 2.0 * t) + 2.0 * t +
                   t * t * (v + chi_line) * (v + chi_line);
  const double b = sqrt_b * sqrt_b;
  const double norm = t * (v + chi_tot);
  const double c = (a * chi_het * chi_het + b + 1.0 +
                    2.0 * chi_het * (v * sqrt_b + t * (v + chi_line)) +
                    2.0 * t * (v * v - 1.0)) /
                   (norm * norm);
  const double sqrt_d = (v + sqrt_b * chi_het) / norm;
  const double d = sqrt_d * sqrt_d;

  const double u = v * (1.0 - t) - t * chi_line;
  const double ab_radicand = CheckedRadicand(u * u * (a + 2.0 * sqrt_b), "AB");
  const double w = (chi_het * u + sqrt_b - 1.0) / norm;
  const double cd_radicand = CheckedRadicand(w * w * (c + 2.0 * sqrt_d), "CD");

  const auto [l1, l2] = RootPair(a, b, ab_radicand);
  const auto [l3, l4] = RootPair(c, d, cd_radicand);
  return {CheckedEigenvalue(l1), CheckedEigenvalue(l2), CheckedEigenvalue(l3),
          CheckedEigenvalue(l4), 1.0};
}

double HolevoBound(std::span<const double, 5> lambda) {
  double g[5];
  for (int i = 0; i < 5; ++i) {
    if (!(lambda[i] >= 1.0)) {
      throw DomainError("symplectic eigenvalue below 1");
    }
    g[i] = GEntropy((lambda[i] - 1.0) / 2.0);
  }
  return g[0] + g[1] - g[2] - g[3] - g[4];
}

double SecretKeyRate(double beta, double i_ab, double chi_be) {
  return beta * i_ab - chi_be;
}

KeyRateBreakdown KeyRateFromAddedNoise(const ModulationParams& modulation,
                                       const AddedNoise& added) {
  const double v = modulation.v_a + 1.0;
  KeyRateBreakdown out;
  out.model = added.model;
  out.i_ab = MutualInformation(v, added.chi_tot);
  out.lambda = SymplecticEigenvalues(v, added.t_used, added.chi_line,
                                     added.chi_het, added.chi_tot);
  out.chi_be = HolevoBound(out.lambda);
  out.k = SecretKeyRate(modulation.beta, out.i_ab, out.chi_be);
  out.key = out.k > 0 ? modulation.f_rep * out.k : 0.0;
  return out;
}

KeyRateReport EvaluateKeyRate(const ScenarioConfig& config, ModelKind model) {
  KeyRateReport report;
  report.budget = TotalBudget(config);
  report.transmittance = report.budget.t;
  report.added = ComputeAddedNoise(report.budget, config.detector,
                                   report.transmittance, model);
  report.rate = KeyRateFromAddedNoise(config.modulation, report.added);
  return report;
}

}  // namespace cvqkd
