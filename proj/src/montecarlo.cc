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

#include "cvqkd/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "cvqkd/errors.h"
#include "cvqkd/noise_budget.h"

namespace cvqkd {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kPi = std::numbers::pi;

std::uint64_t Rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Sums of a per-sample statistic over one block.
struct Moments {
  double count = 0;
  double sum = 0;
  double sum_sq = 0;

  Moments& operator+=(const Moments& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
  }
  Moments operator-(const Moments& o) const {
    return {count - o.count, sum - o.sum, sum_sq - o.sum_sq};
  }
};

using Sampler = std::function<double(Xoshiro256&)>;
using Estimator = std::function<double(const Moments&)>;

void RequireSamples(std::int64_t n, std::int64_t minimum) {
  if (n < minimum) {
    throw DomainError("at least " + std::to_string(minimum) +
                      " samples required, got " + std::to_string(n));
  }
}

Moments RunBlock(const Sampler& sampler, std::int64_t samples,
                 std::uint64_t seed) {
  Xoshiro256 rng(seed);
  Moments m;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double y = sampler(rng);
    m.sum += y;
    m.sum_sq += y * y;
  }
  m.count = static_cast<double>(samples);
  return m;
}

McResult Run(const Sampler& sampler, const Estimator& estimator,
             std::int64_t n, std::uint64_t seed, int threads) {
  std::vector<Moments> blocks(kJackknifeBlocks);
  const auto work = [&](int worker, int stride) {
    for (int b = worker; b < kJackknifeBlocks; b += stride) {
      const std::int64_t size =
          n / kJackknifeBlocks + (b < n % kJackknifeBlocks ? 1 : 0);
      blocks[b] = RunBlock(sampler, size,
                           seed ^ (static_cast<std::uint64_t>(b) * kGolden));
    }
  };
  threads = std::clamp(threads, 1, kJackknifeBlocks);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const auto& m : blocks) total += m;

  McResult result;
  result.estimate = estimator(total);
  result.n_samples = n;
  result.seed = seed;

  std::vector<double> leave_out(kJackknifeBlocks);
  double mean = 0;
  for (int b = 0; b < kJackknifeBlocks; ++b) {
    leave_out[b] = estimator(total - blocks[b]);
    mean += leave_out[b];
  }
  mean /= kJackknifeBlocks;
  double ss = 0;
  for (double x : leave_out) ss += (x - mean) * (x - mean);
  result.std_error =
      std::sqrt(ss * (kJackknifeBlocks - 1.0) / kJackknifeBlocks);
  return result;
}

double Mean(const Moments& m) { return m.sum / m.count; }

double Variance(const Moments& m) {
  const double mean = Mean(m);
  return m.sum_sq / m.count - mean * mean;
}

// Wraps to (-pi, pi].
double WrapPhase(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& word : s_) word = SplitMix64(seed);
}

std::uint64_t Xoshiro256::Next() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double Xoshiro256::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double Xoshiro256::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * kPi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

McResult SimulateReferencePhaseEstimation(double e_r2_bob, double chi,
                                          std::int64_t n, std::uint64_t seed,
                                          int threads) {
  RequireSamples(n, kMinSamples);
  if (!(e_r2_bob > 0) || !(chi >= 0)) {
    throw DomainError("reference simulation needs E_R^2 > 0 and chi >= 0");
  }
  const double amplitude = std::sqrt(e_r2_bob);
  const double sigma = std::sqrt(chi + 1.0);
  const Sampler sampler = [=](Xoshiro256& rng) {
    const double theta = -kPi + 2.0 * kPi * rng.Uniform();
    const double x = amplitude * std::cos(theta) + sigma * rng.Normal();
    const double p = amplitude * std::sin(theta) + sigma * rng.Normal();
    return WrapPhase(std::atan2(p, x) - theta);
  };
  return Run(sampler, Variance, n, seed, threads);
}

McResult SimulatePhaseNoisePenalty(double v_a, double v_est, std::int64_t n,
                                   std::uint64_t seed, int threads) {
  RequireSamples(n, kMinSamples);
  if (!(v_a > 0) || !(v_est >= 0)) {
    throw DomainError("penalty simulation needs V_A > 0 and V_est >= 0");
  }
  const double sd_a = std::sqrt(v_a);
  const double sd_phase = std::sqrt(v_est);
  const Sampler sampler = [=](Xoshiro256& rng) {
    const double x_a = sd_a * rng.Normal();
    const double p_a = sd_a * rng.Normal();
    const double delta = sd_phase * rng.Normal();
    const double rotated = x_a * std::cos(delta) + p_a * std::sin(delta);
    const double measured = rotated + rng.Normal();
    const double r = measured - x_a;
    return r * r;
  };
  const Estimator estimator = [](const Moments& m) { return Mean(m) - 1.0; };
  return Run(sampler, estimator, n, seed, threads);
}

McResult SimulateCompensatedProtocol(const ScenarioConfig& config,
                                     std::int64_t n, std::uint64_t seed,
                                     int threads) {
  RequireSamples(n, kMinProtocolSamples);
  const auto violations = Validate(config);
  if (!violations.empty()) {
    throw ValidationError(violations.front().field, violations.front().rule);
  }
  const double t = Transmittance(config.channel);
  const ReferenceNoise ref =
      ComputeReferenceNoise(t, config.channel.epsilon0, config.detector);
  const double eta = config.detector.eta;
  const double bob_noise = 1.0 + config.detector.v_el;
  const double gain = std::sqrt(t * eta / 2.0);
  const double sd_a = std::sqrt(config.modulation.v_a);
  const double sd_bob = std::sqrt(bob_noise);
  const double amplitude = std::sqrt(config.reference.e_r2_bob);
  const double sd_ref = std::sqrt(ref.chi_total + 1.0);
  const double sd_drift = std::sqrt(
      DriftVariance(config.reference.dnu_a, config.reference.dnu_b,
                    config.reference.dt) +
      config.reference.v_channel);

  const Sampler sampler = [=](Xoshiro256& rng) {
    const double x_a = sd_a * rng.Normal();
    const double p_a = sd_a * rng.Normal();
    const double theta_ref = -kPi + 2.0 * kPi * rng.Uniform();
    const double theta_sig = theta_ref + sd_drift * rng.Normal();

    // Signal in Bob's frame, rotated as in the compensation matrix.
    const double cs = std::cos(theta_sig);
    const double ss = std::sin(theta_sig);
    const double x_b = gain * (cs * x_a + ss * p_a) + sd_bob * rng.Normal();
    const double p_b = gain * (-ss * x_a + cs * p_a) + sd_bob * rng.Normal();

    const double x_r = amplitude * std::cos(theta_ref) + sd_ref * rng.Normal();
    const double p_r = amplitude * std::sin(theta_ref) + sd_ref * rng.Normal();
    const double theta_hat = std::atan2(p_r, x_r);

    // Alice's estimate of Bob's outcome after rotating by theta_hat.
    const double ch = std::cos(theta_hat);
    const double sh = std::sin(theta_hat);
    const double rx = x_b - gain * (ch * x_a + sh * p_a);
    const double rp = p_b - gain * (-sh * x_a + ch * p_a);
    return 0.5 * (rx * rx + rp * rp);
  };
  const double scale = 2.0 / (t * eta);
  const Estimator estimator = [=](const Moments& m) {
    return (Mean(m) - bob_noise) * scale;
  };
  return Run(sampler, estimator, n, seed, threads);
}

}  // namespace cvqkd
