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

// Command-line front end. Subcommands: keyrate, sweep, attack, mc-validate,
// reproduce-table1.
//
// Exit codes: 0 ok, 2 config or usage error, 3 nonphysical parameters,
// 4 Monte Carlo oracle failure, 5 reproduction tolerance failure.

#ifndef CVQKD_CLI_H_
#define CVQKD_CLI_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cvqkd/keyrate.h"
#include "cvqkd/params.h"
#include "json.hpp"

namespace cvqkd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonPhysical = 3;
inline constexpr int kExitOracle = 4;
inline constexpr int kExitReproduction = 5;

inline constexpr std::uint64_t kDefaultSeed = 20220607;

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// Seed used when --seed is absent: CVQKD_SEED if set, else kDefaultSeed.
std::uint64_t DefaultSeed();

nlohmann::json ToJson(const NoiseBudget& budget);
nlohmann::json ToJson(const AddedNoise& added);
nlohmann::json ToJson(const KeyRateBreakdown& rate);
nlohmann::json ToJson(const KeyRateReport& report);

struct OracleCheck {
  std::string quantity;
  double analytic = 0;
  double empirical = 0;
  double std_error = 0;
  std::int64_t n_samples = 0;
  bool pass = false;  // |empirical - analytic| <= 3 std_error
};

// The three sample-level checks for `config`: reference phase estimator
// variance, phase-noise penalty at the config's V_est, and the compensated
// protocol. The protocol oracle uses at least kMinProtocolSamples.
std::vector<OracleCheck> RunOracles(const ScenarioConfig& config,
                                    std::int64_t n, std::uint64_t seed,
                                    int threads);

struct ReproductionCheck {
  std::string quantity;
  double computed = 0;
  double published = 0;
  double allowed = 0;  // absolute tolerance
  bool pass = false;
};

// Key, Key^T and xi_tot^T of the 25 km experiment against published values.
std::vector<ReproductionCheck> ReproduceExperiment();

}  // namespace cvqkd::cli

#endif  // CVQKD_CLI_H_
