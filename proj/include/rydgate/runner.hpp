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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rydgate/config.hpp"
#include "rydgate/sweep.hpp"

namespace rydgate {

namespace detail {
/// (name, JSON text) for every preset under presets/, embedded at build time.
const std::vector<std::pair<std::string, std::string>>& embedded_presets();
}  // namespace detail

namespace harness {

inline constexpr const char* kArtifactVersion = RYDGATE_VERSION;
inline constexpr int kSummarySchemaVersion = 1;
inline constexpr const char* kOutputDirEnv = "RYDGATE_OUT_DIR";

/// Runs the scenario's evaluator. When `trajectory` is non-null it receives
/// the state trajectory the CSV is written from.
analysis::PointOutputs evaluate(const Scenario& scenario, PropagationResult* trajectory = nullptr);

/// The named evaluators, bound to `config`: each maps sweep parameters to outputs.
analysis::EvaluatorRegistry make_registry(const ExperimentConfig& config);

struct RunResult {
  Json summary;
  std::string csv;
};

/// Evaluates the config (sweeping if it has axes) without touching the disk.
RunResult execute(const ExperimentConfig& config, bool serial = false);

/// Writes the CSV and summary into `directory`; returns their paths.
std::pair<std::filesystem::path, std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                                      const RunResult& result,
                                                                      const std::filesystem::path& directory);

/// t_ns, P_<label> per basis label, re_<tracked>, im_<tracked>; %.17g.
std::string trajectory_csv(const PropagationResult& trajectory, const std::string& tracked);

/// Axis columns, then every output name, then an error column.
std::string sweep_csv(const analysis::SweepResult& result);

/// --out, then $RYDGATE_OUT_DIR, then the working directory.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_dir);

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> list_presets();

/// Throws ConfigError for an unknown name.
Json preset_document(std::string_view name);

/// Reads a config file. A run summary is accepted too; its config echo is used.
Json load_document(const std::string& path);

}  // namespace harness
}  // namespace rydgate
