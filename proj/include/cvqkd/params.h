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

// Scenario parameters for a local-local-oscillator CV-QKD link.
//
// Units: noise variances in shot-noise units (vacuum quadrature variance 1),
// phase variances in rad^2, reference intensities in mean photon number,
// distances in km, attenuation in dB/km, linewidths in Hz, times in s.

#ifndef CVQKD_PARAMS_H_
#define CVQKD_PARAMS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvqkd {

// How the phase-noise variance is attributed between Eve and Bob.
enum class ModelKind {
  // Every phase-noise source is untrusted.
  kConventional,
  // The detector-calibrated share of the reference measurement noise is
  // trusted.
  kTrusted,
  // The whole reference measurement noise is trusted (optimistic).
  kAllErrorTrusted,
};

// Mapping from residual phase variance to excess noise.
enum class PhaseNoiseMapping {
  kLinear,  // V_A * V_est
  kExact,   // 2 V_A (1 - exp(-V_est / 2))
};

// Source of the reference intensity at Alice's output when no explicit
// override is configured.
enum class AliceReferenceModel {
  // The quoted reference intensity applies at both ends of the link.
  kSameAsBob,
  // Bob's intensity scaled back through the channel loss, E_R^2 / T.
  kLossCompensated,
};

struct ChannelParams {
  double alpha_db_per_km = 0.2;
  double distance_km = 25.0;
  double epsilon0 = 0.002;  // excess noise on the reference

  bool operator==(const ChannelParams&) const = default;
};

struct DetectorParams {
  double eta = 0.5;
  double v_el = 0.1;

  bool operator==(const DetectorParams&) const = default;
};

struct ModulationParams {
  double v_a = 4.0;
  double f_rep = 100e6;
  double beta = 0.95;

  bool operator==(const ModulationParams&) const = default;
};

struct PhaseRefParams {
  double e_r2_bob = 1000.0;
  std::optional<double> e_r2_alice_override;
  AliceReferenceModel alice_model = AliceReferenceModel::kSameAsBob;
  double dnu_a = 0.0;
  double dnu_b = 0.0;
  double dt = 0.0;  // |t_R - t_S|
  double v_channel = 0.0;

  bool operator==(const PhaseRefParams&) const = default;
};

struct HardwareParams {
  double xi0 = 0.01;
  double d_db = 40.0;
  int n_adc = 10;
  double r_e_db = 40.0;
  double r_p_db = 30.0;

  bool operator==(const HardwareParams&) const = default;
};

// Complete input set for one evaluation. Default-constructed values are the
// pilot-multiplexed simulation regime (beta 0.95, eta 0.5, V_A 4, v_el 0.1,
// alpha 0.2 dB/km, E_R^2 1000, xi0 0.01, 10-bit ADC, 40 dB AM dynamics,
// 40/30 dB extinction ratios, epsilon0 0.002).
struct ScenarioConfig {
  ChannelParams channel;
  DetectorParams detector;
  ModulationParams modulation;
  PhaseRefParams reference;
  HardwareParams hardware;
  ModelKind model = ModelKind::kConventional;
  PhaseNoiseMapping mapping = PhaseNoiseMapping::kLinear;
  // Measured total excess noise. When present, the hardware budget is not
  // composed and this value is used as xi_tot.
  std::optional<double> measured_xi_tot;

  bool operator==(const ScenarioConfig&) const = default;
};

struct Violation {
  std::string field;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// 10^(-alpha L / 10).
double Transmittance(const ChannelParams& channel);

// Returns every invariant violation; empty iff the config is valid.
std::vector<Violation> Validate(const ScenarioConfig& config);

// Parses a JSON object document. Absent keys take their defaults.
// Throws ParseError on malformed input and ValidationError (naming the first
// offending field) when an invariant is violated.
ScenarioConfig LoadConfig(std::string_view text);
ScenarioConfig LoadConfigFile(const std::string& path);

// Inverse of LoadConfig; doubles are written with round-trip precision.
std::string SerializeConfig(const ScenarioConfig& config);

// Experimental 25 km point with measured excess noise 0.056 SNU.
ScenarioConfig ExperimentConfig();

std::string_view ToString(ModelKind model);
std::string_view ToString(PhaseNoiseMapping mapping);
std::string_view ToString(AliceReferenceModel model);
// Throws ParseError on unknown names.
ModelKind ParseModelKind(std::string_view name);
PhaseNoiseMapping ParsePhaseNoiseMapping(std::string_view name);
AliceReferenceModel ParseAliceReferenceModel(std::string_view name);

}  // namespace cvqkd

#endif  // CVQKD_PARAMS_H_
