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

#include "cvqkd/sweep.h"

#include <cmath>

#include <fmt/format.h>

#include "cvqkd/errors.h"
#include "cvqkd/noise_budget.h"
#include "cvqkd/noise_models.h"

namespace cvqkd {

namespace {

constexpr double kMaxSearchKm = 2000.0;

ScenarioConfig AtDistance(const ScenarioConfig& config, double distance_km) {
  ScenarioConfig c = config;
  c.channel.distance_km = distance_km;
  return c;
}

std::string Label(const SweepColumn& column, bool monitored) {
  if (!column.attacked) return std::string(ToString(column.model));
  return monitored ? "trusted_attacked"
                   : "trusted_attacked_insecure_diagnostic";
}

}  // namespace

std::vector<Violation> ValidateSweep(const SweepSpec& spec) {
  std::vector<Violation> v;
  if (!(spec.start_km >= 0)) v.push_back({"start_km", ">= 0"});
  if (!(spec.start_km <= spec.stop_km)) v.push_back({"stop_km", ">= start_km"});
  if (!(spec.step_km > 0)) v.push_back({"step_km", "> 0"});
  if (spec.models.empty() && !spec.include_attack) {
    v.push_back({"models", "nonempty"});
  }
  if (spec.include_attack && !(spec.attack.alpha_low >= 0)) {
    v.push_back({"alpha_low", ">= 0"});
  }
  return v;
}

std::vector<double> SweepDistances(const SweepSpec& spec) {
  std::vector<double> out;
  // Index-based so rounding does not accumulate; the slack admits `stop`
  // itself when (stop - start) / step is integral.
  const double span = (spec.stop_km - spec.start_km) / spec.step_km;
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  out.reserve(count);
  for (long i = 0; i < count; ++i) {
    out.push_back(spec.start_km + static_cast<double>(i) * spec.step_km);
  }
  return out;
}

KeyRateBreakdown EvaluateColumn(const ScenarioConfig& config,
                                const SweepColumn& column,
                                const AttackParams& attack, bool monitored,
                                double distance_km) {
  const ScenarioConfig c = AtDistance(config, distance_km);
  if (!column.attacked) return EvaluateKeyRate(c, column.model).rate;
  const NoiseBudget budget = TotalBudget(c);
  const AddedNoise added = AddedNoiseUnderAttack(
      budget, c.detector, budget.t, attack, distance_km, monitored);
  return KeyRateFromAddedNoise(c.modulation, added);
}

std::optional<double> MaxDistance(const ScenarioConfig& config,
                                  const SweepColumn& column,
                                  const AttackParams& attack, bool monitored,
                                  double from_km, double step_km,
                                  double tolerance_km) {
  const auto k_at = [&](double d) {
    return EvaluateColumn(config, column, attack, monitored, d).k;
  };
  double lo = from_km;
  if (!(k_at(lo) > 0)) return std::nullopt;
  double hi = lo + step_km;
  while (k_at(hi) > 0) {
    lo = hi;
    hi += step_km;
    if (hi > kMaxSearchKm) return std::nullopt;
  }
  while (hi - lo > tolerance_km) {
    const double mid = 0.5 * (lo + hi);
    (k_at(mid) > 0 ? lo : hi) = mid;
  }
  return lo;
}

SweepResult RunSweep(const ScenarioConfig& measured_or_composed,
                     const SweepSpec& spec) {
  const ScenarioConfig config = AnchorMeasuredNoise(measured_or_composed);
  const auto violations = ValidateSweep(spec);
  if (!violations.empty()) {
    throw ValidationError(violations.front().field, violations.front().rule);
  }
  AttackParams attack = spec.attack;
  attack.alpha_std = config.channel.alpha_db_per_km;
  if (spec.include_attack) ValidateAttack(attack);

  SweepResult result;
  result.include_attack = spec.include_attack;
  result.eigenvalues = spec.eigenvalues;
  for (ModelKind m : spec.models) {
    SweepColumn column{m, false, {}};
    column.label = Label(column, spec.monitored);
    result.columns.push_back(column);
  }
  if (spec.include_attack) {
    SweepColumn column{ModelKind::kTrusted, true, {}};
    column.label = Label(column, spec.monitored);
    result.columns.push_back(column);
  }

  for (double d : SweepDistances(spec)) {
    const ScenarioConfig c = AtDistance(config, d);
    const NoiseBudget budget = TotalBudget(c);
    OutputRow row;
    row.distance_km = d;
    row.transmittance = budget.t;
    row.xi_tot = budget.xi_tot;
    row.xi_trusted_channel = budget.xi_error_t / budget.t;
    row.xi_tot_trusted =
        TrustedExcessNoise(budget.xi_tot, budget.xi_error_t, budget.t);
    for (const auto& column : result.columns) {
      const KeyRateBreakdown rate =
          EvaluateColumn(config, column, attack, spec.monitored, d);
      row.k.push_back(rate.k);
      row.key.push_back(rate.key);
      if (spec.eigenvalues) row.lambda.push_back(rate.lambda);
    }
    if (spec.include_attack) {
      row.e_r2_attack =
          AttackReferenceIntensity(c.reference.e_r2_bob, attack, d);
      row.alarm = CheckReferenceIntensity(row.e_r2_attack, c.reference.e_r2_bob,
                                          spec.alarm_threshold)
                      .alarm;
    }
    result.rows.push_back(std::move(row));
  }

  for (const auto& column : result.columns) {
    result.max_distance_km.push_back(MaxDistance(
        config, column, attack, spec.monitored, spec.start_km, spec.step_km));
  }
  return result;
}

std::string FormatNumber(double x) { return fmt::format("{:.12g}", x); }

void WriteCsv(const SweepResult& result, std::ostream& out) {
  out << "distance_km,transmittance,xi_tot,xi_tot_trusted,xi_trusted_channel";
  for (const auto& column : result.columns) {
    out << ",k_" << column.label << ",key_" << column.label;
    if (result.eigenvalues) {
      for (int i = 1; i <= 5; ++i) out << ",lambda" << i << "_" << column.label;
    }
  }
  if (result.include_attack) out << ",e_r2_attack,alarm";
  out << "\n";
  for (const auto& row : result.rows) {
    out << FormatNumber(row.distance_km) << ',' << FormatNumber(row.transmittance)
        << ',' << FormatNumber(row.xi_tot) << ','
        << FormatNumber(row.xi_tot_trusted) << ','
        << FormatNumber(row.xi_trusted_channel);
    for (size_t i = 0; i < result.columns.size(); ++i) {
      out << ',' << FormatNumber(row.k[i]) << ',' << FormatNumber(row.key[i]);
      if (result.eigenvalues) {
        for (double l : row.lambda[i]) out << ',' << FormatNumber(l);
      }
    }
    if (result.include_attack) {
      out << ',' << FormatNumber(row.e_r2_attack) << ',' << (row.alarm ? 1 : 0);
    }
    out << "\n";
  }
}

}  // namespace cvqkd
