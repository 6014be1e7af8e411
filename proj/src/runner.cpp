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

#include "rydgate/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "rydgate/analysis.hpp"

namespace rydgate::harness {

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch == '\n' ? ' ' : ch;
  }
  return quoted + "\"";
}

PropagationResult propagate_span(const Scenario& s) {
  return propagate(s.hamiltonian(), QuantumState::basis(s.space(), s.initial), s.span.start, s.span.end,
                   s.integrator);
}

const Envelope* chirp_of(const Envelope& e) {
  if (e.kind() == EnvelopeKind::ChirpedDetuning) return &e;
  if (e.kind() == EnvelopeKind::TtlWindowed) return chirp_of(*std::get<envelope_params::Ttl>(e.params()).inner);
  return nullptr;
}

void population_outputs(const PropagationResult& r, analysis::PointOutputs& out) {
  const StateSpace& space = r.final_state().space();
  double drift = 0.0;
  std::vector<double> peak(space.dim(), 0.0);
  for (const QuantumState& s : r.trajectory) {
    drift = std::max(drift, std::abs(s.norm() - 1.0));
    for (std::size_t i = 0; i < space.dim(); ++i) {
      peak[i] = std::max(peak[i], std::norm(s.amplitudes()(static_cast<Eigen::Index>(i))));
    }
  }
  for (std::size_t i = 0; i < space.dim(); ++i) {
    out["max_P_" + space.label(i)] = peak[i];
    out["final_P_" + space.label(i)] = std::norm(r.final_state().amplitudes()(static_cast<Eigen::Index>(i)));
  }
  out["norm_drift"] = drift;
}

Json sweep_json(const analysis::SweepResult& r) {
  Json axes = Json::array();
  for (const auto& a : r.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json outputs = Json::object();
    for (const auto& [k, v] : p.outputs) outputs[k] = v;
    points.push_back({{"params", p.params},
                      {"outputs", outputs},
                      {"error", p.error.empty() ? Json(nullptr) : Json(p.error)}});
  }
  const std::size_t failed = static_cast<std::size_t>(
      std::count_if(r.points.begin(), r.points.end(), [](const analysis::SweepPoint& p) { return !p.error.empty(); }));
  return {{"axes", axes}, {"shape", r.shape()}, {"failed_points", failed}, {"points", points}};
}

}  // namespace

analysis::PointOutputs evaluate(const Scenario& s, PropagationResult* trajectory) {
  analysis::PointOutputs out;
  const std::string& e = s.evaluator;
  if (e == "trajectory") {
    PropagationResult r = propagate_span(s);
    population_outputs(r, out);
    if (trajectory) *trajectory = std::move(r);
  } else if (e == "stirap-infidelity") {
    out["infidelity"] = analysis::stirap_infidelity({s.pump, s.stokes}, s.delta, s.span, s.integrator);
    if (trajectory) *trajectory = propagate_span(s);
  } else if (e == "cpr-time") {
    const analysis::CprResult c = analysis::find_cpr_time(s.manifold, s.cpr_window, s.cpr_threshold, s.integrator);
    out["gate_time"] = c.gate_time;
    out["return_population"] = c.return_population;
    out["cpr_found"] = c.found ? 1.0 : 0.0;
    if (const Envelope* chirp = chirp_of(s.detuning_rr)) {
      out["gate_time_over_period"] = c.gate_time / std::get<envelope_params::Chirp>(chirp->params()).period;
    }
    if (trajectory) *trajectory = propagate_span(s);
  } else if (e == "ent-phase") {
    analysis::PhaseResult p = analysis::entangling_phase(s.manifold, s.gate_time, s.phase_threshold, s.integrator);
    out["entangling_phase"] = p.entangling_phase;
    out["return_population"] = p.return_population;
    out["reference_return_population"] = p.reference_return_population;
    const std::vector<double> w = analysis::exchange_weight(s.manifold, p.reference);
    // First-order phase of |rSrS>, same sign convention as entangling_phase.
    out["perturbative_phase"] = -analysis::perturbative_phase(p.reference.times, w, s.manifold.v0);
    if (trajectory) *trajectory = std::move(p.trajectory);
  } else if (e == "full-gate") {
    analysis::GateRun run = analysis::run_full_gate(s.gate, QuantumState::basis(s.space(), s.initial), s.integrator);
    const analysis::GateReport& r = run.report;
    out["gate_time"] = r.gate_time;
    out["return_fidelity"] = r.return_fidelity;
    out["entangling_phase"] = r.entangling_phase;
    out["local_phase"] = r.local_phase;
    out["peak_excited"] = r.peak_excited;
    out["residual_rydberg"] = r.residual_rydberg;
    if (trajectory) *trajectory = std::move(run.trajectory);
  } else {
    throw ConfigError("unknown evaluator '" + e + "'");
  }
  return out;
}

analysis::EvaluatorRegistry make_registry(const ExperimentConfig& config) {
  analysis::EvaluatorRegistry registry;
  for (const char* name : {"trajectory", "stirap-infidelity", "cpr-time", "ent-phase", "full-gate"}) {
    registry.add(name, [&config, name = std::string(name)](std::span<const double> params) {
      Scenario s = scenario_at(config, params);
      s.evaluator = name;
      return evaluate(s);
    });
  }
  return registry;
}

RunResult execute(const ExperimentConfig& config, bool serial) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  Json& summary = result.summary;
  summary["artifact_version"] = kArtifactVersion;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["name"] = config.name;
  summary["model"] = to_string(config.scenario.model);
  summary["evaluator"] = config.scenario.evaluator;
  summary["config"] = config.echo;
  summary["csv"] = config.csv_name;

  if (config.sweep.empty()) {
    PropagationResult trajectory;
    const analysis::PointOutputs outputs = evaluate(config.scenario, &trajectory);
    Json report = Json::object();
    for (const auto& [k, v] : outputs) report[k] = v;
    summary["report"] = report;
    result.csv = trajectory_csv(trajectory, config.scenario.tracked);
  } else {
    std::vector<analysis::SweepAxis> axes;
    for (const auto& a : config.sweep) axes.push_back({a.name, a.values});
    const analysis::EvaluatorRegistry registry = make_registry(config);
    const analysis::PointEvaluator& evaluator = registry.at(config.scenario.evaluator);
    const analysis::SweepResult r = serial ? analysis::sweep_serial(axes, evaluator) : analysis::sweep(axes, evaluator);
    summary["sweep"] = sweep_json(r);
    result.csv = sweep_csv(r);
  }
  summary["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::pair<std::filesystem::path, std::filesystem::path> write_outputs(const ExperimentConfig& config,
                                                                      const RunResult& result,
                                                                      const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto csv_path = directory / config.csv_name;
  const auto summary_path = directory / config.summary_name;
  std::ofstream csv(csv_path, std::ios::binary);
  csv << result.csv;
  std::ofstream summary(summary_path, std::ios::binary);
  summary << result.summary.dump(2) << '\n';
  if (!csv || !summary) throw std::runtime_error("failed writing outputs to '" + directory.string() + "'");
  return {csv_path, summary_path};
}

std::string trajectory_csv(const PropagationResult& trajectory, const std::string& tracked) {
  const StateSpace& space = trajectory.final_state().space();
  const std::size_t tracked_index = space.index(tracked);
  std::string out = "t_ns";
  for (const auto& label : space.labels()) out += ",P_" + label;
  out += ",re_" + tracked + ",im_" + tracked + "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    const ComplexVector& a = trajectory.trajectory[k].amplitudes();
    append_number(out, trajectory.times[k]);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      out += ',';
      append_number(out, std::norm(a(i)));
    }
    const Complex c = a(static_cast<Eigen::Index>(tracked_index));
    out += ',';
    append_number(out, c.real());
    out += ',';
    append_number(out, c.imag());
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const analysis::SweepResult& result) {
  std::set<std::string> names;
  for (const auto& p : result.points) {
    for (const auto& [k, _] : p.outputs) names.insert(k);
  }
  std::string out;
  for (const auto& a : result.axes) out += csv_field(a.name) + ",";
  for (const auto& n : names) out += csv_field(n) + ",";
  out += "error\n";
  for (const auto& p : result.points) {
    for (double v : p.params) {
      append_number(out, v);
      out += ',';
    }
    for (const auto& n : names) {
      const auto it = p.outputs.find(n);
      if (it != p.outputs.end()) append_number(out, it->second);
      out += ',';
    }
    out += csv_field(p.error) + "\n";
  }
  return out;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_dir) {
  if (cli_dir && !cli_dir->empty()) return *cli_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return std::filesystem::current_path();
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& [name, text] : detail::embedded_presets()) {
    out.push_back({name, Json::parse(text).value("description", "")});
  }
  return out;
}

Json preset_document(std::string_view name) {
  for (const auto& [preset, text] : detail::embedded_presets()) {
    if (preset == name) return Json::parse(text);
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

Json load_document(const std::string& path) {
  Json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("artifact_version") && doc.contains("config")) return doc["config"];
  return doc;
}

}  // namespace rydgate::harness
