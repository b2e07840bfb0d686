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

// Distance sweeps over trust models, optionally with the reference
// intensity attack, and their CSV serialization.

#ifndef CVQKD_SWEEP_H_
#define CVQKD_SWEEP_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cvqkd/attack.h"
#include "cvqkd/keyrate.h"
#include "cvqkd/params.h"

namespace cvqkd {

struct SweepSpec {
  double start_km = 0;
  double stop_km = 100;
  double step_km = 1;
  std::vector<ModelKind> models{ModelKind::kConventional, ModelKind::kTrusted};
  bool include_attack = false;
  // alpha_std is overwritten with the config attenuation by RunSweep.
  AttackParams attack;
  bool monitored = true;
  bool eigenvalues = false;
  double alarm_threshold = kDefaultIntensityAlarmThreshold;
};

std::vector<Violation> ValidateSweep(const SweepSpec& spec);

// start, start + step, ... up to stop. A step longer than the range yields
// the single point `start`.
std::vector<double> SweepDistances(const SweepSpec& spec);

// One key-rate column of the sweep.
struct SweepColumn {
  ModelKind model = ModelKind::kConventional;
  bool attacked = false;
  std::string label;  // e.g. "trusted", "trusted_attacked"
};

struct OutputRow {
  double distance_km = 0;
  double transmittance = 1;
  double xi_tot = 0;
  double xi_tot_trusted = 0;
  double xi_trusted_channel = 0;  // xi_error_t / T
  std::vector<double> k;          // per column
  std::vector<double> key;        // per column
  std::vector<SymplecticSpectrum> lambda;  // per column when requested
  double e_r2_attack = 0;         // attack sweeps only
  bool alarm = false;             // attack sweeps only
};

struct SweepResult {
  std::vector<SweepColumn> columns;
  std::vector<OutputRow> rows;
  // Zero crossing of k per column, bisected to 0.01 km; empty when the key
  // is never positive.
  std::vector<std::optional<double>> max_distance_km;
  bool include_attack = false;
  bool eigenvalues = false;
};

// Key rate breakdown for one column at `distance_km`.
KeyRateBreakdown EvaluateColumn(const ScenarioConfig& config,
                                const SweepColumn& column,
                                const AttackParams& attack, bool monitored,
                                double distance_km);

// Largest distance with positive key, bisected to `tolerance_km`. The
// search starts at `from_km` and steps by `step_km` until the key turns
// non-positive (giving up past 2000 km).
std::optional<double> MaxDistance(const ScenarioConfig& config,
                                  const SweepColumn& column,
                                  const AttackParams& attack, bool monitored,
                                  double from_km, double step_km,
                                  double tolerance_km = 0.01);

SweepResult RunSweep(const ScenarioConfig& config, const SweepSpec& spec);

// Comma separated, header row, LF endings, 12 significant digits.
void WriteCsv(const SweepResult& result, std::ostream& out);

// Formats a double with 12 significant digits.
std::string FormatNumber(double x);

}  // namespace cvqkd

#endif  // CVQKD_SWEEP_H_
