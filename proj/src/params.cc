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

#include "cvqkd/params.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cvqkd/errors.h"
#include "json.hpp"

namespace cvqkd {

namespace {

using nlohmann::json;

void Check(std::vector<Violation>& out, bool ok, const char* field,
           const char* rule) {
  if (!ok) out.push_back({field, rule});
}

// NaN fails every comparison, so a non-finite value is reported through the
// ordinary range rule.
bool Finite(double x) { return std::isfinite(x); }

double AsDouble(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw ParseError("key '" + key + "' must be a number");
  }
  return value.get<double>();
}

std::string AsString(const json& value, const std::string& key) {
  if (!value.is_string()) {
    throw ParseError("key '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

using Setter = std::function<void(ScenarioConfig&, const json&)>;

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"alpha_db_per_km",
       [](ScenarioConfig& c, const json& v) {
         c.channel.alpha_db_per_km = AsDouble(v, "alpha_db_per_km");
       }},
      {"distance_km",
       [](ScenarioConfig& c, const json& v) {
         c.channel.distance_km = AsDouble(v, "distance_km");
       }},
      {"epsilon0",
       [](ScenarioConfig& c, const json& v) {
         c.channel.epsilon0 = AsDouble(v, "epsilon0");
       }},
      {"eta", [](ScenarioConfig& c,
                 const json& v) { c.detector.eta = AsDouble(v, "eta"); }},
      {"v_el", [](ScenarioConfig& c,
                  const json& v) { c.detector.v_el = AsDouble(v, "v_el"); }},
      {"v_a", [](ScenarioConfig& c,
                 const json& v) { c.modulation.v_a = AsDouble(v, "v_a"); }},
      {"f_rep",
       [](ScenarioConfig& c, const json& v) {
         c.modulation.f_rep = AsDouble(v, "f_rep");
       }},
      {"beta", [](ScenarioConfig& c,
                  const json& v) { c.modulation.beta = AsDouble(v, "beta"); }},
      {"e_r2_bob",
       [](ScenarioConfig& c, const json& v) {
         c.reference.e_r2_bob = AsDouble(v, "e_r2_bob");
       }},
      {"e_r2_alice_override",
       [](ScenarioConfig& c, const json& v) {
         if (v.is_null()) {
           c.reference.e_r2_alice_override.reset();
         } else {
           c.reference.e_r2_alice_override =
               AsDouble(v, "e_r2_alice_override");
         }
       }},
      {"alice_reference",
       [](ScenarioConfig& c, const json& v) {
         c.reference.alice_model =
             ParseAliceReferenceModel(AsString(v, "alice_reference"));
       }},
      {"dnu_a", [](ScenarioConfig& c,
                   const json& v) { c.reference.dnu_a = AsDouble(v, "dnu_a"); }},
      {"dnu_b", [](ScenarioConfig& c,
                   const json& v) { c.reference.dnu_b = AsDouble(v, "dnu_b"); }},
      {"dt", [](ScenarioConfig& c,
                const json& v) { c.reference.dt = AsDouble(v, "dt"); }},
      {"v_channel",
       [](ScenarioConfig& c, const json& v) {
         c.reference.v_channel = AsDouble(v, "v_channel");
       }},
      {"xi0", [](ScenarioConfig& c,
                 const json& v) { c.hardware.xi0 = AsDouble(v, "xi0"); }},
      {"d_db", [](ScenarioConfig& c,
                  const json& v) { c.hardware.d_db = AsDouble(v, "d_db"); }},
      {"n_adc",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_number_integer()) {
           throw ParseError("key 'n_adc' must be an integer");
         }
         c.hardware.n_adc = v.get<int>();
       }},
      {"r_e_db", [](ScenarioConfig& c,
                    const json& v) { c.hardware.r_e_db = AsDouble(v, "r_e_db"); }},
      {"r_p_db", [](ScenarioConfig& c,
                    const json& v) { c.hardware.r_p_db = AsDouble(v, "r_p_db"); }},
      {"xi_tot",
       [](ScenarioConfig& c, const json& v) {
         if (v.is_null()) {
           c.measured_xi_tot.reset();
         } else {
           c.measured_xi_tot = AsDouble(v, "xi_tot");
         }
       }},
      {"model",
       [](ScenarioConfig& c, const json& v) {
         c.model = ParseModelKind(AsString(v, "model"));
       }},
      {"mapping",
       [](ScenarioConfig& c, const json& v) {
         c.mapping = ParsePhaseNoiseMapping(AsString(v, "mapping"));
       }},
  };
  return *setters;
}

}  // namespace

double Transmittance(const ChannelParams& channel) {
  return std::pow(10.0, -channel.alpha_db_per_km * channel.distance_km / 10.0);
}

std::vector<Violation> Validate(const ScenarioConfig& c) {
  std::vector<Violation> v;
  Check(v, c.channel.alpha_db_per_km >= 0 && Finite(c.channel.alpha_db_per_km),
        "alpha_db_per_km", ">= 0");
  Check(v, c.channel.distance_km >= 0 && Finite(c.channel.distance_km),
        "distance_km", ">= 0");
  Check(v, c.channel.epsilon0 >= 0 && Finite(c.channel.epsilon0), "epsilon0",
        ">= 0");
  Check(v, c.detector.eta > 0 && c.detector.eta <= 1, "eta", "in (0, 1]");
  Check(v, c.detector.v_el >= 0 && Finite(c.detector.v_el), "v_el", ">= 0");
  Check(v, c.modulation.v_a > 0 && Finite(c.modulation.v_a), "v_a", "> 0");
  Check(v, c.modulation.f_rep > 0 && Finite(c.modulation.f_rep), "f_rep",
        "> 0");
  Check(v, c.modulation.beta > 0 && c.modulation.beta <= 1, "beta",
        "in (0, 1]");
  Check(v, c.reference.e_r2_bob > 0 && Finite(c.reference.e_r2_bob),
        "e_r2_bob", "> 0");
  if (c.reference.e_r2_alice_override) {
    const double o = *c.reference.e_r2_alice_override;
    Check(v, o >= 0 && Finite(o), "e_r2_alice_override", ">= 0");
  }
  Check(v, c.reference.dnu_a >= 0 && Finite(c.reference.dnu_a), "dnu_a",
        ">= 0");
  Check(v, c.reference.dnu_b >= 0 && Finite(c.reference.dnu_b), "dnu_b",
        ">= 0");
  Check(v, c.reference.dt >= 0 && Finite(c.reference.dt), "dt", ">= 0");
  Check(v, c.reference.v_channel >= 0 && Finite(c.reference.v_channel),
        "v_channel", ">= 0");
  Check(v, c.hardware.xi0 >= 0 && Finite(c.hardware.xi0), "xi0", ">= 0");
  // d_db may be +inf (perfect extinction).
  Check(v, c.hardware.d_db > 0, "d_db", "> 0");
  Check(v, c.hardware.n_adc >= 1, "n_adc", ">= 1");
  Check(v, c.hardware.r_e_db > 0, "r_e_db", "> 0");
  Check(v, c.hardware.r_p_db > 0, "r_p_db", "> 0");
  if (c.measured_xi_tot) {
    Check(v, *c.measured_xi_tot >= 0 && Finite(*c.measured_xi_tot), "xi_tot",
          ">= 0");
  }
  return v;
}

ScenarioConfig LoadConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("config must be a single JSON object");
  }
  ScenarioConfig config;
  const auto& setters = Setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ParseError("unknown config key '" + key + "'");
    }
    it->second(config, value);
  }
  const auto violations = Validate(config);
  if (!violations.empty()) {
    throw ValidationError(violations.front().field, violations.front().rule);
  }
  return config;
}

ScenarioConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadConfig(buffer.str());
}

std::string SerializeConfig(const ScenarioConfig& c) {
  json doc = {
      {"alpha_db_per_km", c.channel.alpha_db_per_km},
      {"distance_km", c.channel.distance_km},
      {"epsilon0", c.channel.epsilon0},
      {"eta", c.detector.eta},
      {"v_el", c.detector.v_el},
      {"v_a", c.modulation.v_a},
      {"f_rep", c.modulation.f_rep},
      {"beta", c.modulation.beta},
      {"e_r2_bob", c.reference.e_r2_bob},
      {"alice_reference", ToString(c.reference.alice_model)},
      {"dnu_a", c.reference.dnu_a},
      {"dnu_b", c.reference.dnu_b},
      {"dt", c.reference.dt},
      {"v_channel", c.reference.v_channel},
      {"xi0", c.hardware.xi0},
      {"d_db", c.hardware.d_db},
      {"n_adc", c.hardware.n_adc},
      {"r_e_db", c.hardware.r_e_db},
      {"r_p_db", c.hardware.r_p_db},
      {"model", ToString(c.model)},
      {"mapping", ToString(c.mapping)},
  };
  if (c.reference.e_r2_alice_override) {
    doc["e_r2_alice_override"] = *c.reference.e_r2_alice_override;
  }
  if (c.measured_xi_tot) doc["xi_tot"] = *c.measured_xi_tot;
  return doc.dump(2) + "\n";
}

ScenarioConfig ExperimentConfig() {
  ScenarioConfig c;
  c.channel.alpha_db_per_km = 0.2;
  c.channel.distance_km = 25.0;
  c.modulation.f_rep = 100e6;
  c.modulation.beta = 0.95;
  c.detector.eta = 0.56;
  c.detector.v_el = 0.042;
  c.modulation.v_a = 3.073;
  c.reference.e_r2_bob = 1000.0;
  c.measured_xi_tot = 0.056;
  return c;
}

std::string_view ToString(ModelKind model) {
  switch (model) {
    case ModelKind::kConventional:
      return "conventional";
    case ModelKind::kTrusted:
      return "trusted";
    case ModelKind::kAllErrorTrusted:
      return "all_error_trusted";
  }
  return "unknown";
}

std::string_view ToString(PhaseNoiseMapping mapping) {
  return mapping == PhaseNoiseMapping::kLinear ? "linear" : "exact";
}

std::string_view ToString(AliceReferenceModel model) {
  return model == AliceReferenceModel::kSameAsBob ? "same_as_bob"
                                                  : "loss_compensated";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "conventional") return ModelKind::kConventional;
  if (name == "trusted") return ModelKind::kTrusted;
  if (name == "all_error_trusted") return ModelKind::kAllErrorTrusted;
  throw ParseError("unknown model '" + std::string(name) + "'");
}

PhaseNoiseMapping ParsePhaseNoiseMapping(std::string_view name) {
  if (name == "linear") return PhaseNoiseMapping::kLinear;
  if (name == "exact") return PhaseNoiseMapping::kExact;
  throw ParseError("unknown mapping '" + std::string(name) + "'");
}

AliceReferenceModel ParseAliceReferenceModel(std::string_view name) {
  if (name == "same_as_bob") return AliceReferenceModel::kSameAsBob;
  if (name == "loss_compensated") return AliceReferenceModel::kLossCompensated;
  throw ParseError("unknown alice_reference '" + std::string(name) + "'");
}

}  // namespace cvqkd
