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

#include "cvqkd/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cvqkd/errors.h"
#include "cvqkd/montecarlo.h"
#include "cvqkd/sweep.h"

namespace cvqkd::cli {

namespace {

using nlohmann::json;

constexpr double kPublishedKey = 4.556e6;
constexpr double kPublishedKeyTrusted = 6.358e6;
constexpr double kPublishedXiTotTrusted = 0.03;

int DefaultThreads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void PrintKeyRateText(const KeyRateReport& r, std::ostream& out) {
  const auto& b = r.budget;
  out << "model            " << ToString(r.rate.model) << "\n"
      << "transmittance    " << FormatNumber(r.transmittance) << "\n"
      << "noise budget (SNU)\n"
      << "  xi0            " << FormatNumber(b.xi0) << "\n"
      << "  xi_am          " << FormatNumber(b.xi_am) << "\n"
      << "  xi_le          " << FormatNumber(b.xi_le) << "\n"
      << "  xi_adc         " << FormatNumber(b.xi_adc) << "\n"
      << "  xi_rest        " << FormatNumber(b.xi_rest) << "\n"
      << "  xi_drift       " << FormatNumber(b.xi_drift) << "\n"
      << "  xi_channel     " << FormatNumber(b.xi_channel) << "\n"
      << "  xi_error       " << FormatNumber(b.xi_error) << "\n"
      << "  xi_error_u     " << FormatNumber(b.xi_error_u) << "\n"
      << "  xi_error_t     " << FormatNumber(b.xi_error_t) << "\n"
      << "  xi_phase       " << FormatNumber(b.xi_phase) << "\n"
      << "  xi_tot         " << FormatNumber(b.xi_tot)
      << (b.measured ? " (measured)" : "") << "\n"
      << "added noise (SNU)\n"
      << "  chi_line       " << FormatNumber(r.added.chi_line) << "\n"
      << "  chi_het        " << FormatNumber(r.added.chi_het) << "\n"
      << "  chi_tot        " << FormatNumber(r.added.chi_tot) << "\n"
      << "key rate\n"
      << "  i_ab           " << FormatNumber(r.rate.i_ab) << " bits/pulse\n";
  for (int i = 0; i < 5; ++i) {
    out << "  lambda" << i + 1 << "        " << FormatNumber(r.rate.lambda[i])
        << "\n";
  }
  out << "  chi_be         " << FormatNumber(r.rate.chi_be) << " bits/pulse\n"
      << "  k              " << FormatNumber(r.rate.k) << " bits/pulse\n"
      << "  key            " << FormatNumber(r.rate.key) << " bits/s\n";
}

void PrintKeyRateCsv(const KeyRateReport& r, std::ostream& out) {
  const auto& b = r.budget;
  out << "transmittance,xi0,xi_am,xi_le,xi_adc,xi_rest,xi_drift,xi_channel,"
         "xi_error,xi_error_u,xi_error_t,xi_phase,xi_tot,chi_line,chi_het,"
         "chi_tot,i_ab,lambda1,lambda2,lambda3,lambda4,lambda5,chi_be,k,key\n";
  const double values[] = {r.transmittance, b.xi0, b.xi_am, b.xi_le, b.xi_adc,
                           b.xi_rest, b.xi_drift, b.xi_channel, b.xi_error,
                           b.xi_error_u, b.xi_error_t, b.xi_phase, b.xi_tot,
                           r.added.chi_line, r.added.chi_het, r.added.chi_tot,
                           r.rate.i_ab, r.rate.lambda[0], r.rate.lambda[1],
                           r.rate.lambda[2], r.rate.lambda[3], r.rate.lambda[4],
                           r.rate.chi_be, r.rate.k, r.rate.key};
  bool first = true;
  for (double v : values) {
    out << (first ? "" : ",") << FormatNumber(v);
    first = false;
  }
  out << "\n";
}

void PrintMaxDistances(const SweepResult& result, std::ostream& out) {
  for (size_t i = 0; i < result.columns.size(); ++i) {
    out << "max_distance_km " << result.columns[i].label << " ";
    const auto& d = result.max_distance_km[i];
    out << (d ? FormatNumber(*d) : std::string("none")) << "\n";
  }
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw ParseError("cannot open output file '" + path + "'");
  return file;
}

// Column index by label, or -1.
int FindColumn(const SweepResult& r, std::string_view label) {
  for (size_t i = 0; i < r.columns.size(); ++i) {
    if (r.columns[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv("CVQKD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("CVQKD_SEED is not an integer: ") + env);
    }
  }
  return kDefaultSeed;
}

json ToJson(const NoiseBudget& b) {
  return {{"xi0", b.xi0},
          {"xi_am", b.xi_am},
          {"xi_le", b.xi_le},
          {"xi_adc", b.xi_adc},
          {"xi_rest", b.xi_rest},
          {"xi_drift", b.xi_drift},
          {"xi_channel", b.xi_channel},
          {"xi_error", b.xi_error},
          {"xi_error_u", b.xi_error_u},
          {"xi_error_t", b.xi_error_t},
          {"xi_phase", b.xi_phase},
          {"xi_tot", b.xi_tot},
          {"measured", b.measured},
          {"v_drift", b.phase.v_drift},
          {"v_channel", b.phase.v_channel},
          {"v_error", b.phase.v_error},
          {"v_est", b.phase.v_est},
          {"chi_total", b.reference.chi_total},
          {"chi_untrusted", b.reference.chi_untrusted},
          {"chi_trusted", b.reference.chi_trusted}};
}

json ToJson(const AddedNoise& a) {
  return {{"chi_line", a.chi_line},
          {"chi_het", a.chi_het},
          {"chi_tot", a.chi_tot},
          {"model", ToString(a.model)},
          {"t_used", a.t_used}};
}

json ToJson(const KeyRateBreakdown& r) {
  return {{"i_ab", r.i_ab},
          {"lambda", r.lambda},
          {"chi_be", r.chi_be},
          {"k", r.k},
          {"key", r.key},
          {"model", ToString(r.model)}};
}

json ToJson(const KeyRateReport& r) {
  return {{"transmittance", r.transmittance},
          {"noise_budget", ToJson(r.budget)},
          {"added_noise", ToJson(r.added)},
          {"key_rate", ToJson(r.rate)}};
}

std::vector<OracleCheck> RunOracles(const ScenarioConfig& config,
                                    std::int64_t n, std::uint64_t seed,
                                    int threads) {
  const NoiseBudget budget = TotalBudget(config);
  const double v_a = config.modulation.v_a;
  std::vector<OracleCheck> checks;
  const auto add = [&](std::string quantity, double analytic,
                       const McResult& mc) {
    OracleCheck c;
    c.quantity = std::move(quantity);
    c.analytic = analytic;
    c.empirical = mc.estimate;
    c.std_error = mc.std_error;
    c.n_samples = mc.n_samples;
    c.pass = std::abs(mc.estimate - analytic) <= 3.0 * mc.std_error;
    checks.push_back(std::move(c));
  };
  add("reference_phase_variance", budget.phase.v_error,
      SimulateReferencePhaseEstimation(config.reference.e_r2_bob,
                                       budget.reference.chi_total, n, seed,
                                       threads));
  add("phase_noise_penalty", PhaseNoiseExact(v_a, budget.phase.v_est),
      SimulatePhaseNoisePenalty(v_a, budget.phase.v_est, n, seed + 1, threads));
  add("compensated_protocol_excess_noise",
      PhaseNoiseExact(v_a, budget.phase.v_est),
      SimulateCompensatedProtocol(config, std::max(n, kMinProtocolSamples),
                                  seed + 2, threads));
  return checks;
}

std::vector<ReproductionCheck> ReproduceExperiment() {
  const ScenarioConfig config = ExperimentConfig();
  const KeyRateReport conv = EvaluateKeyRate(config, ModelKind::kConventional);
  const KeyRateReport trusted = EvaluateKeyRate(config, ModelKind::kTrusted);
  const double xi_tot_trusted = TrustedExcessNoise(
      trusted.budget.xi_tot, trusted.budget.xi_error_t, trusted.transmittance);

  std::vector<ReproductionCheck> checks = {
      {"key_bps", conv.rate.key, kPublishedKey, 0.005 * kPublishedKey, false},
      {"key_trusted_bps", trusted.rate.key, kPublishedKeyTrusted,
       0.01 * kPublishedKeyTrusted, false},
      {"xi_tot_trusted", xi_tot_trusted, kPublishedXiTotTrusted, 0.001, false},
  };
  for (auto& c : checks) {
    c.pass = std::abs(c.computed - c.published) <= c.allowed;
  }
  return checks;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Secret key rates of local-local-oscillator CV-QKD under "
               "conventional and trusted phase-noise models"};
  app.require_subcommand(1);

  // keyrate
  auto* keyrate = app.add_subcommand("keyrate", "Evaluate one scenario");
  std::string keyrate_config;
  std::string keyrate_model;
  bool as_json = false;
  bool as_csv = false;
  keyrate->add_option("config", keyrate_config, "JSON config file")
      ->required();
  keyrate->add_option("--model", keyrate_model,
                      "conventional | trusted | all_error_trusted");
  auto* json_flag = keyrate->add_flag("--json", as_json, "JSON report");
  keyrate->add_flag("--csv", as_csv, "CSV report")->excludes(json_flag);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Key rate versus distance");
  std::string sweep_config;
  std::string sweep_out;
  SweepSpec sweep_spec;
  std::vector<std::string> sweep_models{"conventional", "trusted"};
  sweep->add_option("config", sweep_config, "JSON config file")->required();
  sweep->add_option("--start", sweep_spec.start_km, "First distance (km)");
  sweep->add_option("--stop", sweep_spec.stop_km, "Last distance (km)");
  sweep->add_option("--step", sweep_spec.step_km, "Distance step (km)");
  sweep->add_option("--models", sweep_models, "Comma-separated models")
      ->delimiter(',');
  sweep->add_flag("--attack", sweep_spec.include_attack,
                  "Add the attacked trusted column");
  sweep->add_option("--alpha-low", sweep_spec.attack.alpha_low,
                    "Attenuation of Eve's reference fiber (dB/km)");
  sweep->add_option("--monitored", sweep_spec.monitored,
                    "Real-time reference intensity monitoring");
  sweep->add_flag("--eigenvalues", sweep_spec.eigenvalues,
                  "Emit symplectic eigenvalues");
  sweep->add_option("--out", sweep_out, "CSV output path")->required();

  // attack
  auto* attack = app.add_subcommand("attack", "Reference intensity attack");
  std::string attack_config;
  std::string attack_out;
  SweepSpec attack_spec;
  attack_spec.stop_km = 40;
  attack_spec.include_attack = true;
  attack->add_option("config", attack_config, "JSON config file")->required();
  attack->add_option("--alpha-low", attack_spec.attack.alpha_low,
                     "Attenuation of Eve's reference fiber (dB/km)");
  attack->add_option("--monitored", attack_spec.monitored,
                     "Real-time reference intensity monitoring");
  attack->add_option("--start", attack_spec.start_km, "First distance (km)");
  attack->add_option("--stop", attack_spec.stop_km, "Last distance (km)");
  attack->add_option("--step", attack_spec.step_km, "Distance step (km)");
  attack->add_option("--alarm-threshold", attack_spec.alarm_threshold,
                     "Relative intensity deviation that raises the alarm");
  attack->add_option("--out", attack_out, "CSV output path")->required();

  // mc-validate
  auto* mc = app.add_subcommand("mc-validate", "Monte Carlo oracles");
  std::string mc_config;
  std::int64_t mc_samples = 1'000'000;
  std::optional<std::uint64_t> mc_seed;
  int mc_threads = DefaultThreads();
  mc->add_option("config", mc_config, "JSON config file")->required();
  mc->add_option("--samples", mc_samples, "Samples per oracle");
  mc->add_option("--seed", mc_seed, "RNG seed (default: $CVQKD_SEED)");
  mc->add_option("--threads", mc_threads, "Worker threads");

  // reproduce-table1
  auto* table = app.add_subcommand("reproduce-table1",
                                   "Recompute the 25 km experimental point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*keyrate) {
      const ScenarioConfig config = LoadConfigFile(keyrate_config);
      const ModelKind model =
          keyrate_model.empty() ? config.model : ParseModelKind(keyrate_model);
      const KeyRateReport report = EvaluateKeyRate(config, model);
      if (as_json) {
        out << ToJson(report).dump(2) << "\n";
      } else if (as_csv) {
        PrintKeyRateCsv(report, out);
      } else {
        PrintKeyRateText(report, out);
      }
      return kExitOk;
    }

    if (*sweep) {
      const ScenarioConfig config = LoadConfigFile(sweep_config);
      sweep_spec.models.clear();
      for (const auto& m : sweep_models) {
        sweep_spec.models.push_back(ParseModelKind(m));
      }
      const SweepResult result = RunSweep(config, sweep_spec);
      auto file = OpenOut(sweep_out);
      WriteCsv(result, file);
      out << "wrote " << result.rows.size() << " rows to " << sweep_out
          << "\n";
      PrintMaxDistances(result, out);
      return kExitOk;
    }

    if (*attack) {
      const ScenarioConfig config = LoadConfigFile(attack_config);
      attack_spec.models = {ModelKind::kConventional, ModelKind::kTrusted};
      const SweepResult result = RunSweep(config, attack_spec);
      auto file = OpenOut(attack_out);
      WriteCsv(result, file);

      const int conv = FindColumn(result, "conventional");
      const int trusted = FindColumn(result, "trusted");
      const int attacked = static_cast<int>(result.columns.size()) - 1;
      int violations = 0;
      int alarms = 0;
      for (const auto& row : result.rows) {
        if (!(row.k[conv] <= row.k[attacked] &&
              row.k[attacked] <= row.k[trusted])) {
          ++violations;
        }
        alarms += row.alarm ? 1 : 0;
      }
      out << "wrote " << result.rows.size() << " rows to " << attack_out
          << "\n";
      if (!attack_spec.monitored) {
        out << "column " << result.columns[attacked].label
            << ": insecure-diagnostic, not a security bound\n";
      }
      out << "ordering k_conventional <= k_" << result.columns[attacked].label
          << " <= k_trusted: "
          << (violations == 0 ? std::string("holds at every row")
                              : fmt::format("violated at {} rows", violations))
          << "\n";
      out << "intensity alarm raised at " << alarms << " of "
          << result.rows.size() << " rows (threshold "
          << FormatNumber(attack_spec.alarm_threshold) << ")\n";
      PrintMaxDistances(result, out);
      return kExitOk;
    }

    if (*mc) {
      if (mc_samples < kMinSamples) {
        err << "error: --samples must be at least " << kMinSamples << "\n";
        return kExitConfig;
      }
      const ScenarioConfig config = LoadConfigFile(mc_config);
      const std::uint64_t seed = mc_seed ? *mc_seed : DefaultSeed();
      const auto checks = RunOracles(config, mc_samples, seed, mc_threads);
      out << "seed " << seed << "\n";
      out << fmt::format("{:<36} {:>16} {:>16} {:>14} {:>9} {:>8} {}\n",
                         "quantity", "analytic", "empirical", "std_error",
                         "samples", "sigma", "result");
      bool all = true;
      for (const auto& c : checks) {
        const double sigma = c.std_error > 0
                                 ? (c.empirical - c.analytic) / c.std_error
                                 : 0.0;
        out << fmt::format("{:<36} {:>16} {:>16} {:>14} {:>9} {:>8.2f} {}\n",
                           c.quantity, FormatNumber(c.analytic),
                           FormatNumber(c.empirical), FormatNumber(c.std_error),
                           c.n_samples, sigma, c.pass ? "pass" : "FAIL");
        all = all && c.pass;
      }
      return all ? kExitOk : kExitOracle;
    }

    if (*table) {
      bool all = true;
      out << fmt::format("{:<18} {:>16} {:>16} {:>12} {}\n", "quantity",
                         "computed", "published", "tolerance", "result");
      for (const auto& c : ReproduceExperiment()) {
        out << fmt::format("{:<18} {:>16} {:>16} {:>12} {}\n", c.quantity,
                           FormatNumber(c.computed), FormatNumber(c.published),
                           FormatNumber(c.allowed), c.pass ? "pass" : "FAIL");
        all = all && c.pass;
      }
      return all ? kExitOk : kExitReproduction;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "error: invalid " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonPhysical;
  }
  return kExitConfig;
}

}  // namespace cvqkd::cli
