// Copyright 2026 The rydgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydgate/dynamics.hpp"
#include "rydgate/errors.hpp"
#include "rydgate/models.hpp"
#include "rydgate/pulses.hpp"

namespace rydgate::harness {

using Json = nlohmann::json;

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string path;  // JSON pointer into the config document
  std::string message;
};

Json to_json(const Diagnostic& d);

/// Configuration rejected by schema or physics validation.
class InvalidConfig : public ConfigError {
 public:
  explicit InvalidConfig(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

enum class Model { H3, H4, Ryd4, Full16 };

std::string to_string(Model model);

/// Everything needed to evaluate one configuration, in rad/ns and ns.
struct Scenario {
  Model model = Model::H3;
  std::string evaluator;
  PropagateOptions integrator;
  std::string initial;
  std::string tracked;

  // h3, h4: the ladder / single-ion channels over `span`.
  models::Interval span{0.0, 0.0};
  double delta = 0.0;
  Envelope pump;
  Envelope stokes;
  Envelope microwave;
  Envelope detuning_rr;

  // ryd4: the manifold is propagated over `span` from span.start.
  models::ManifoldSchedule manifold;
  models::Interval cpr_window{0.0, 0.0};  // relative to span.start
  double cpr_threshold = 0.99;
  double gate_time = 0.0;  // relative to span.start
  double phase_threshold = 0.9;

  // full16
  models::GateSchedule gate;

  const StateSpace& space() const;
  /// The model Hamiltonian (for full16 the V0 run).
  Hamiltonian hamiltonian() const;
};

struct SweepTarget {
  std::string path;  // JSON pointer into the resolved config
  double scale = 1.0;
  double unit_factor = 1.0;  // rad/ns per declared unit for frequency targets
};

struct SweepAxisSpec {
  std::string name;
  std::vector<double> values;
  std::vector<SweepTarget> targets;
};

struct ExperimentConfig {
  std::string name;
  std::string description;
  /// Fully resolved document: defaults filled in, frequencies in rad/ns.
  /// Loading it again reproduces the same run bit for bit.
  Json echo;
  Scenario scenario;
  std::vector<SweepAxisSpec> sweep;
  std::string csv_name;
  std::string summary_name;
};

/// Reads and parses a JSON file. Throws ConfigError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Full schema and physics validation; never throws.
std::vector<Diagnostic> validate_config(const Json& document);

/// Throws InvalidConfig when validate_config reports an error.
ExperimentConfig load_config(const Json& document);

/// Scenario for one sweep point: target = (value * scale) * unit_factor.
Scenario scenario_at(const ExperimentConfig& config, std::span<const double> params);

/// Envelope from a resolved (rad/ns) description.
Envelope parse_envelope(const Json& description);

}  // namespace rydgate::harness
