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

// Sample-level simulations that check the analytic phase-noise formulas.
//
// Random numbers: every run is split into kJackknifeBlocks blocks. Block b
// owns an independent xoshiro256** stream whose 256-bit state is filled by
// four successive SplitMix64 outputs starting from seed ^ (b * 0x9E3779B97F4A7C15).
// Uniform doubles are (next() >> 11) * 2^-53, Gaussians come from the basic
// Box-Muller transform on (1 - u1, u2), consuming one uniform pair per two
// normals. The block plan does not depend on the thread count, so results are
// bit-identical for any `threads` value on one platform (cos/sin/log/atan2
// come from the platform libm).
//
// Standard errors are delete-one-block jackknife estimates over the blocks.

#ifndef CVQKD_MONTECARLO_H_
#define CVQKD_MONTECARLO_H_

#include <array>
#include <cstdint>

#include "cvqkd/params.h"

namespace cvqkd {

inline constexpr int kJackknifeBlocks = 64;
inline constexpr std::int64_t kMinSamples = 10'000;
inline constexpr std::int64_t kMinProtocolSamples = 100'000;

struct McResult {
  double estimate = 0;
  double std_error = 0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  bool operator==(const McResult&) const = default;
};

// SplitMix64 step; also used to derive per-block seeds.
std::uint64_t SplitMix64(std::uint64_t& state);

// xoshiro256** 1.0 with Box-Muller normals.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();
  // Uniform in [0, 1).
  double Uniform();
  // Standard normal.
  double Normal();

 private:
  std::array<std::uint64_t, 4> s_;
  double spare_ = 0;
  bool has_spare_ = false;
};

// Variance of the wrapped error of the arctangent estimator
// atan2(P, X) - theta, with X = E_R cos(theta) + n_x, P = E_R sin(theta) + n_p
// and n_x, n_p ~ N(0, chi + 1). Compare with (chi + 1) / E_R^2.
McResult SimulateReferencePhaseEstimation(double e_r2_bob, double chi,
                                          std::int64_t n, std::uint64_t seed,
                                          int threads = 1);

// Excess noise mean[(x - X_A)^2] - 1 of a unit channel whose only
// imperfection is a Gaussian phase error of variance v_est. Compare with
// 2 V_A (1 - exp(-v_est / 2)).
McResult SimulatePhaseNoisePenalty(double v_a, double v_est, std::int64_t n,
                                   std::uint64_t seed, int threads = 1);

// End-to-end phase compensation: Bob heterodynes the signal (gain
// sqrt(T eta / 2), noise 1 + v_el per quadrature) and the reference, Alice
// rotates her data by the reference estimate, and the residual is converted
// to channel-referred excess noise averaged over both quadratures. The
// signal phase differs from the reference phase by a Gaussian of variance
// v_drift + v_channel. Compare with PhaseNoiseExact(V_A, V_est).
McResult SimulateCompensatedProtocol(const ScenarioConfig& config,
                                     std::int64_t n, std::uint64_t seed,
                                     int threads = 1);

}  // namespace cvqkd

#endif  // CVQKD_MONTECARLO_H_
