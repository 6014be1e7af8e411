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

// Command-line front end: run configs and presets, list presets, validate.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rydgate/runner.hpp"

namespace {

using rydgate::harness::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitNumerical = 3;

int report_error(const char* type, const std::string& message, int code, Json extra = Json::object()) {
  Json error{{"type", type}, {"message", message}, {"exit_code", code}};
  error.update(extra);
  std::cerr << Json{{"error", error}}.dump() << '\n';
  return code;
}

int run_document(const Json& document, const std::optional<std::string>& out_dir, bool serial) {
  const auto config = rydgate::harness::load_config(document);
  const auto result = rydgate::harness::execute(config, serial);
  const auto [csv, summary] =
      rydgate::harness::write_outputs(config, result, rydgate::harness::resolve_output_dir(out_dir));
  Json line{{"status", "ok"}, {"name", config.name}, {"csv", csv.string()}, {"summary", summary.string()}};
  if (result.summary.contains("report")) line["report"] = result.summary["report"];
  if (result.summary.contains("sweep")) {
    line["points"] = result.summary["sweep"]["points"].size();
    line["failed_points"] = result.summary["sweep"]["failed_points"];
  }
  std::cout << line.dump() << '\n';
  return kExitOk;
}

// Maps every failure onto the documented exit codes.
template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const rydgate::harness::InvalidConfig& e) {
    Json diagnostics = Json::array();
    for (const auto& d : e.diagnostics()) diagnostics.push_back(rydgate::harness::to_json(d));
    return report_error("invalid-config", e.what(), kExitInvalidConfig, {{"diagnostics", diagnostics}});
  } catch (const rydgate::ConfigError& e) {
    return report_error("invalid-config", e.what(), kExitInvalidConfig);
  } catch (const rydgate::ScheduleError& e) {
    return report_error("invalid-config", e.what(), kExitInvalidConfig);
  } catch (const rydgate::NumericalError& e) {
    return report_error("numerical-failure", e.what(), kExitNumerical, {{"time_ns", e.time()}});
  } catch (const std::exception& e) {
    return report_error("failure", e.what(), kExitFailure);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator for microwave-dressed Rydberg-ion gates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rydgate::harness::kArtifactVersion));

  std::string config_path;
  std::string preset_name;
  std::optional<std::string> out_dir;
  bool serial = false;

  auto* run = app.add_subcommand("run", "Run a config file (or the config echo of a run summary)");
  run->add_option("config", config_path, "Config JSON")->required();
  run->add_option("--out", out_dir, "Output directory (overrides $RYDGATE_OUT_DIR)");
  run->add_flag("--serial", serial, "Evaluate sweep points on one thread");

  auto* preset = app.add_subcommand("preset", "Run a built-in preset");
  preset->add_option("name", preset_name, "Preset name (see `list`)")->required();
  preset->add_option("--out", out_dir, "Output directory (overrides $RYDGATE_OUT_DIR)");
  preset->add_flag("--serial", serial, "Evaluate sweep points on one thread");

  auto* list = app.add_subcommand("list", "List built-in presets");

  auto* validate = app.add_subcommand("validate", "Check a config (file path or preset name) without running it");
  validate->add_option("config", config_path, "Config JSON or preset name")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    return guarded([&] { return run_document(rydgate::harness::load_document(config_path), out_dir, serial); });
  }
  if (*preset) {
    return guarded([&] { return run_document(rydgate::harness::preset_document(preset_name), out_dir, serial); });
  }
  if (*list) {
    for (const auto& p : rydgate::harness::list_presets()) std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
    return kExitOk;
  }
  if (*validate) {
    return guarded([&] {
      const Json document = std::filesystem::exists(config_path) ? rydgate::harness::load_document(config_path)
                                                                 : rydgate::harness::preset_document(config_path);
      Json errors = Json::array();
      Json warnings = Json::array();
      for (const auto& d : rydgate::harness::validate_config(document)) {
        (d.severity == rydgate::harness::Diagnostic::Severity::Error ? errors : warnings)
            .push_back(rydgate::harness::to_json(d));
      }
      const bool valid = errors.empty();
      std::cout << Json{{"valid", valid}, {"errors", errors}, {"warnings", warnings}}.dump(2) << '\n';
      return valid ? kExitOk : kExitInvalidConfig;
    });
  }
  return kExitFailure;
}
