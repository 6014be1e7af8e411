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

#include "rydgate/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rydgate/analysis.hpp"
#include "rydgate/units.hpp"

namespace rydgate::harness {

namespace {

using Severity = Diagnostic::Severity;

constexpr const char* kMhz = "MHz-over-2pi";
constexpr const char* kRadPerNs = "rad-per-ns";
constexpr double kMhzFactor = units::from_mhz(1.0);
// Anything above ~3 GHz is almost certainly a unit mistake.
constexpr double kImplausibleFrequency = 20.0;

const std::set<std::string>& frequency_keys() {
  static const std::set<std::string> keys{"delta", "v0", "peak", "value", "delta0"};
  return keys;
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

class Checker {
 public:
  std::vector<Diagnostic> out;

  void error(const std::string& path, const std::string& message) {
    out.push_back({Severity::Error, path.empty() ? "/" : path, message});
  }
  void warning(const std::string& path, const std::string& message) {
    out.push_back({Severity::Warning, path.empty() ? "/" : path, message});
  }
  bool failed() const {
    return std::any_of(out.begin(), out.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
  }

  bool object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
              std::initializer_list<const char*> optional) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return false;
    }
    bool ok = true;
    for (const char* key : required) {
      if (!j.contains(key)) {
        error(join(path, key), "missing required key");
        ok = false;
      }
    }
    for (const auto& [key, _] : j.items()) {
      const auto known = [&key](std::initializer_list<const char*> keys) {
        return std::any_of(keys.begin(), keys.end(), [&key](const char* k) { return key == k; });
      };
      if (!known(required) && !known(optional)) {
        error(join(path, key), "unknown key");
        ok = false;
      }
    }
    return ok;
  }

  bool number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
      error(path, "expected a number");
      return false;
    }
    return true;
  }

  bool positive(const Json& j, const std::string& path) {
    if (!number(j, path)) return false;
    if (!(j.get<double>() > 0.0)) {
      error(path, "must be positive");
      return false;
    }
    return true;
  }

  bool string(const Json& j, const std::string& path) {
    if (!j.is_string()) {
      error(path, "expected a string");
      return false;
    }
    return true;
  }

  bool interval(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      error(path, "expected [start, end] in ns");
      return false;
    }
    if (!(j[0].get<double>() <= j[1].get<double>())) {
      error(path, "interval ends before it starts");
      return false;
    }
    return true;
  }

  void envelope(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
      error(path, "envelope must be an object with a string 'kind'");
      return;
    }
    const std::string kind = j["kind"];
    if (kind == "zero") {
      object(j, path, {"kind"}, {});
    } else if (kind == "constant") {
      if (object(j, path, {"kind", "value"}, {})) number(j["value"], join(path, "value"));
    } else if (kind == "gaussian") {
      if (object(j, path, {"kind", "peak", "center", "width"}, {})) {
        number(j["peak"], join(path, "peak"));
        number(j["center"], join(path, "center"));
        positive(j["width"], join(path, "width"));
      }
    } else if (kind == "ddp-pump" || kind == "ddp-stokes") {
      if (object(j, path, {"kind", "peak", "logistic", "steepness", "order", "center"}, {"mask"})) {
        number(j["peak"], join(path, "peak"));
        positive(j["logistic"], join(path, "logistic"));
        if (j.contains("mask")) positive(j["mask"], join(path, "mask"));
        number(j["steepness"], join(path, "steepness"));
        if (!j["order"].is_number_integer() || j["order"].get<long>() < 1) {
          error(join(path, "order"), "must be an integer >= 1");
        }
        number(j["center"], join(path, "center"));
      }
    } else if (kind == "ttl") {
      if (object(j, path, {"kind", "inner", "on", "off"}, {})) {
        envelope(j["inner"], join(path, "inner"));
        if (number(j["on"], join(path, "on")) && number(j["off"], join(path, "off")) &&
            !(j["on"].get<double>() < j["off"].get<double>())) {
          error(path, "ttl window needs on < off");
        }
      }
    } else if (kind == "chirped-detuning") {
      if (object(j, path, {"kind", "delta0", "period", "phase"}, {"origin"})) {
        number(j["delta0"], join(path, "delta0"));
        positive(j["period"], join(path, "period"));
        number(j["phase"], join(path, "phase"));
        if (j.contains("origin")) number(j["origin"], join(path, "origin"));
      }
    } else {
      error(join(path, "kind"), "unknown envelope kind '" + kind + "'");
    }
  }
};

bool parse_model(const std::string& name, Model& model) {
  if (name == "h3") model = Model::H3;
  else if (name == "h4") model = Model::H4;
  else if (name == "ryd4") model = Model::Ryd4;
  else if (name == "full16") model = Model::Full16;
  else return false;
  return true;
}

std::vector<std::string> evaluators_for(Model model) {
  switch (model) {
    case Model::H3: return {"trajectory", "stirap-infidelity"};
    case Model::H4: return {"trajectory"};
    case Model::Ryd4: return {"trajectory", "cpr-time", "ent-phase"};
    case Model::Full16: return {"trajectory", "full-gate"};
  }
  return {};
}

const StateSpace& space_for(Model model) {
  switch (model) {
    case Model::H3: return models::ladder_space();
    case Model::H4: return models::single_ion_space();
    case Model::Ryd4: return models::rydberg_manifold_space();
    case Model::Full16: return models::two_ion_space();
  }
  throw std::logic_error("unreachable");
}

const char* default_initial(Model model) {
  switch (model) {
    case Model::H3:
    case Model::H4: return "0";
    case Model::Ryd4: return "rSrS";
    case Model::Full16: return "00";
  }
  return "";
}

void check_stage(Checker& c, const Json& j, const std::string& path, std::initializer_list<const char*> channels,
                 std::initializer_list<const char*> optional = {}, bool timed = true) {
  std::vector<const char*> required;
  if (timed) required.push_back("interval");
  required.insert(required.end(), channels.begin(), channels.end());
  if (!j.is_object()) {
    c.error(path, "expected an object");
    return;
  }
  for (const char* key : required) {
    if (!j.contains(key)) c.error(join(path, key), "missing required key");
  }
  for (const auto& [key, _] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::any_of(optional.begin(), optional.end(), [&key](const char* k) { return key == k; });
    if (!known) c.error(join(path, key), "unknown key");
  }
  if (timed && j.contains("interval")) c.interval(j["interval"], join(path, "interval"));
  for (const char* key : channels) {
    if (j.contains(key)) c.envelope(j[key], join(path, key));
  }
  for (const char* key : optional) {
    if (j.contains(key)) c.envelope(j[key], join(path, key));
  }
}

// Schema pass. Returns false when the document is too broken to normalise.
bool check_schema(Checker& c, const Json& doc, Model& model) {
  if (!doc.is_object()) {
    c.error("/", "config must be a JSON object");
    return false;
  }
  if (!doc.contains("model") || !doc["model"].is_string() || !parse_model(doc["model"], model)) {
    c.error("/model", "model must be one of h3, h4, ryd4, full16");
    return false;
  }
  std::vector<const char*> required{"model", "units", "evaluator"};
  std::vector<const char*> optional{"name", "description", "integrator", "initial", "tracked", "output", "sweep"};
  switch (model) {
    case Model::H3:
    case Model::H4: required.insert(required.end(), {"span", "delta", "channels"}); break;
    case Model::Ryd4:
      required.insert(required.end(), {"dipole", "v0"});
      optional.insert(optional.end(), {"cpr", "phase"});
      break;
    case Model::Full16:
      required.insert(required.end(), {"delta", "v0", "stirap_up", "dipole", "stirap_down"});
      break;
  }
  for (const char* key : required) {
    if (!doc.contains(key)) c.error(join("", key), "missing required key");
  }
  for (const auto& [key, _] : doc.items()) {
    const auto has = [&key](const std::vector<const char*>& keys) {
      return std::any_of(keys.begin(), keys.end(), [&key](const char* k) { return key == k; });
    };
    if (!has(required) && !has(optional)) c.error(join("", key), "unknown key");
  }
  if (doc.contains("units") &&
      !(doc["units"].is_string() && (doc["units"] == kMhz || doc["units"] == kRadPerNs))) {
    c.error("/units", std::string("units must be \"") + kMhz + "\" or \"" + kRadPerNs + "\"");
  }
  if (doc.contains("evaluator") && c.string(doc["evaluator"], "/evaluator")) {
    const auto allowed = evaluators_for(model);
    if (std::find(allowed.begin(), allowed.end(), doc["evaluator"].get<std::string>()) == allowed.end()) {
      std::string list;
      for (const auto& e : allowed) list += (list.empty() ? "" : ", ") + e;
      c.error("/evaluator", "evaluator not available for model " + to_string(model) + " (use " + list + ")");
    }
  }
  for (const char* key : {"name", "description", "initial", "tracked"}) {
    if (doc.contains(key)) c.string(doc[key], join("", key));
  }
  for (const char* key : {"initial", "tracked"}) {
    if (doc.contains(key) && doc[key].is_string() && !space_for(model).contains(doc[key].get<std::string>())) {
      c.error(join("", key), "'" + doc[key].get<std::string>() + "' is not a basis label of " + to_string(model));
    }
  }
  if (doc.contains("integrator") && c.object(doc["integrator"], "/integrator", {}, {"tol", "sample_dt"})) {
    const Json& i = doc["integrator"];
    if (i.contains("tol") && c.number(i["tol"], "/integrator/tol")) {
      const double tol = i["tol"];
      if (!(tol >= 1e-14 && tol <= 1e-6)) c.error("/integrator/tol", "tol must lie in [1e-14, 1e-6]");
    }
    if (i.contains("sample_dt")) c.positive(i["sample_dt"], "/integrator/sample_dt");
  }
  if (doc.contains("output") && c.object(doc["output"], "/output", {}, {"csv", "summary"})) {
    for (const char* key : {"csv", "summary"}) {
      if (doc["output"].contains(key)) c.string(doc["output"][key], join("/output", key));
    }
  }
  for (const char* key : {"delta", "v0"}) {
    if (doc.contains(key)) c.number(doc[key], join("", key));
  }
  switch (model) {
    case Model::H3:
    case Model::H4:
      if (doc.contains("span")) c.interval(doc["span"], "/span");
      if (doc.contains("channels")) {
        if (model == Model::H3) {
          check_stage(c, doc["channels"], "/channels", {"pump", "stokes"}, {}, false);
        } else {
          check_stage(c, doc["channels"], "/channels", {"pump", "stokes"}, {"microwave", "detuning_rr"}, false);
        }
      }
      break;
    case Model::Ryd4:
      if (doc.contains("dipole")) check_stage(c, doc["dipole"], "/dipole", {"microwave", "detuning_rr"});
      if (doc.contains("cpr") && c.object(doc["cpr"], "/cpr", {"window"}, {"threshold"})) {
        c.interval(doc["cpr"]["window"], "/cpr/window");
        if (doc["cpr"].contains("threshold")) c.number(doc["cpr"]["threshold"], "/cpr/threshold");
      }
      if (doc.contains("phase") && c.object(doc["phase"], "/phase", {"gate_time"}, {"threshold"})) {
        c.positive(doc["phase"]["gate_time"], "/phase/gate_time");
        if (doc["phase"].contains("threshold")) c.number(doc["phase"]["threshold"], "/phase/threshold");
      }
      if (doc.value("evaluator", "") == "cpr-time" && !doc.contains("cpr")) {
        c.error("/cpr", "cpr-time needs a cpr block with a search window");
      }
      if (doc.value("evaluator", "") == "ent-phase" && !doc.contains("phase")) {
        c.error("/phase", "ent-phase needs a phase block with a gate_time");
      }
      break;
    case Model::Full16:
      if (doc.contains("stirap_up")) check_stage(c, doc["stirap_up"], "/stirap_up", {"pump", "stokes"});
      if (doc.contains("dipole")) check_stage(c, doc["dipole"], "/dipole", {"microwave", "detuning_rr"});
      if (doc.contains("stirap_down")) check_stage(c, doc["stirap_down"], "/stirap_down", {"pump", "stokes"});
      break;
  }
  if (doc.contains("sweep") && c.object(doc["sweep"], "/sweep", {"axes"}, {})) {
    const Json& axes = doc["sweep"]["axes"];
    if (!axes.is_array() || axes.empty()) {
      c.error("/sweep/axes", "expected a non-empty array of axes");
    } else {
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const std::string path = "/sweep/axes/" + std::to_string(a);
        if (!c.object(axes[a], path, {"name", "values", "targets"}, {})) continue;
        c.string(axes[a]["name"], path + "/name");
        const Json& values = axes[a]["values"];
        if (!values.is_array() || values.empty() ||
            !std::all_of(values.begin(), values.end(), [](const Json& v) { return v.is_number(); })) {
          c.error(path + "/values", "expected a non-empty array of numbers");
        }
        const Json& targets = axes[a]["targets"];
        if (!targets.is_array() || targets.empty()) {
          c.error(path + "/targets", "expected a non-empty array of targets");
          continue;
        }
        for (std::size_t t = 0; t < targets.size(); ++t) {
          const std::string tpath = path + "/targets/" + std::to_string(t);
          if (!c.object(targets[t], tpath, {"path"}, {"scale", "unit_factor"})) continue;
          if (c.string(targets[t]["path"], tpath + "/path")) {
            try {
              const Json::json_pointer ptr(targets[t]["path"].get<std::string>());
              if (!doc.contains(ptr) || !doc[ptr].is_number()) {
                c.error(tpath + "/path", "does not point at a numeric config value");
              }
              if (ptr.to_string().rfind("/sweep", 0) == 0) c.error(tpath + "/path", "cannot target the sweep block");
            } catch (const Json::exception&) {
              c.error(tpath + "/path", "not a valid JSON pointer");
            }
          }
          if (targets[t].contains("scale")) c.number(targets[t]["scale"], tpath + "/scale");
          if (targets[t].contains("unit_factor")) c.number(targets[t]["unit_factor"], tpath + "/unit_factor");
        }
      }
    }
  }
  return !c.failed();
}

void fill_envelope_defaults(Json& j) {
  if (!j.is_object()) return;
  const std::string kind = j.value("kind", "");
  if ((kind == "ddp-pump" || kind == "ddp-stokes") && !j.contains("mask")) j["mask"] = j["logistic"];
  if (kind == "chirped-detuning" && !j.contains("origin")) j["origin"] = 0.0;
  if (kind == "ttl") fill_envelope_defaults(j["inner"]);
}

void convert_frequencies(Json& j, double factor) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items()) {
      if (value.is_number() && frequency_keys().count(key)) {
        value = value.get<double>() * factor;
      } else {
        convert_frequencies(value, factor);
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) convert_frequencies(v, factor);
  }
}

bool is_frequency_path(const std::string& path) {
  const auto slash = path.rfind('/');
  return frequency_keys().count(path.substr(slash == std::string::npos ? 0 : slash + 1)) > 0;
}

// Defaults filled in and frequencies converted to rad/ns.
Json normalise(const Json& doc, Model model) {
  Json out = doc;
  const bool mhz = doc["units"] == kMhz;
  if (!out.contains("name")) out["name"] = "experiment";
  if (!out.contains("description")) out["description"] = "";
  Json integrator = out.value("integrator", Json::object());
  if (!integrator.contains("tol")) integrator["tol"] = PropagateOptions{}.tol;
  if (!integrator.contains("sample_dt")) integrator["sample_dt"] = PropagateOptions{}.sample_dt;
  out["integrator"] = integrator;
  if (!out.contains("initial")) out["initial"] = default_initial(model);
  if (!out.contains("tracked")) out["tracked"] = out["initial"];
  Json output = out.value("output", Json::object());
  const std::string name = out["name"];
  if (!output.contains("csv")) output["csv"] = name + ".csv";
  if (!output.contains("summary")) output["summary"] = name + ".summary.json";
  out["output"] = output;
  if (out.contains("cpr") && !out["cpr"].contains("threshold")) out["cpr"]["threshold"] = 0.99;
  if (out.contains("phase") && !out["phase"].contains("threshold")) out["phase"]["threshold"] = 0.9;

  for (const char* stage : {"channels", "stirap_up", "dipole", "stirap_down"}) {
    if (!out.contains(stage)) continue;
    for (auto& [key, value] : out[stage].items()) {
      if (key != "interval") fill_envelope_defaults(value);
    }
  }
  if (out.contains("sweep")) {
    for (auto& axis : out["sweep"]["axes"]) {
      for (auto& target : axis["targets"]) {
        if (!target.contains("scale")) target["scale"] = 1.0;
        if (!target.contains("unit_factor")) {
          target["unit_factor"] = mhz && is_frequency_path(target["path"]) ? kMhzFactor : 1.0;
        }
      }
    }
  }
  if (mhz) {
    for (auto& [key, value] : out.items()) {
      if (key == "sweep" || key == "integrator" || key == "output") continue;
      if (value.is_number() && frequency_keys().count(key)) {
        value = value.get<double>() * kMhzFactor;
      } else {
        convert_frequencies(value, kMhzFactor);
      }
    }
    out["units"] = kRadPerNs;
  }
  return out;
}

models::Interval parse_interval(const Json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

Envelope channel_or_zero(const Json& stage, const char* key) {
  return stage.contains(key) ? parse_envelope(stage[key]) : zero_envelope();
}

Scenario build_scenario(const Json& r) {
  Scenario s;
  parse_model(r["model"], s.model);
  s.evaluator = r["evaluator"];
  s.integrator.tol = r["integrator"]["tol"];
  s.integrator.sample_dt = r["integrator"]["sample_dt"];
  s.initial = r["initial"];
  s.tracked = r["tracked"];
  switch (s.model) {
    case Model::H3:
    case Model::H4: {
      s.span = parse_interval(r["span"]);
      s.delta = r["delta"];
      const Json& ch = r["channels"];
      s.pump = parse_envelope(ch["pump"]);
      s.stokes = parse_envelope(ch["stokes"]);
      s.microwave = channel_or_zero(ch, "microwave");
      s.detuning_rr = channel_or_zero(ch, "detuning_rr");
      break;
    }
    case Model::Ryd4: {
      const Json& d = r["dipole"];
      s.span = parse_interval(d["interval"]);
      s.microwave = parse_envelope(d["microwave"]);
      s.detuning_rr = parse_envelope(d["detuning_rr"]);
      s.manifold = {s.span.start, s.microwave, s.detuning_rr, r["v0"].get<double>()};
      if (r.contains("cpr")) {
        s.cpr_window = parse_interval(r["cpr"]["window"]);
        s.cpr_threshold = r["cpr"]["threshold"];
      }
      if (r.contains("phase")) {
        s.gate_time = r["phase"]["gate_time"];
        s.phase_threshold = r["phase"]["threshold"];
      }
      break;
    }
    case Model::Full16: {
      models::GateSchedule& g = s.gate;
      g.stirap_up = parse_interval(r["stirap_up"]["interval"]);
      g.dipole = parse_interval(r["dipole"]["interval"]);
      g.stirap_down = parse_interval(r["stirap_down"]["interval"]);
      g.up = {parse_envelope(r["stirap_up"]["pump"]), parse_envelope(r["stirap_up"]["stokes"])};
      g.down = {parse_envelope(r["stirap_down"]["pump"]), parse_envelope(r["stirap_down"]["stokes"])};
      g.microwave = parse_envelope(r["dipole"]["microwave"]);
      g.detuning_rr = parse_envelope(r["dipole"]["detuning_rr"]);
      g.delta = r["delta"];
      g.v0 = r["v0"];
      s.delta = g.delta;
      s.span = {g.stirap_up.start, g.stirap_down.end};
      break;
    }
  }
  return s;
}

const Envelope& unwrap_ttl(const Envelope& e) {
  if (e.kind() == EnvelopeKind::TtlWindowed) return unwrap_ttl(*std::get<envelope_params::Ttl>(e.params()).inner);
  return e;
}

void physics_checks(Checker& c, const Scenario& s, const Json& resolved) {
  for (const char* key : {"delta", "v0"}) {
    if (resolved.contains(key) && std::abs(resolved[key].get<double>()) > kImplausibleFrequency) {
      c.warning(join("", key), "implausibly large frequency (" + std::to_string(resolved[key].get<double>()) +
                                   " rad/ns); check the units declaration");
    }
  }
  std::function<void(const Json&, const std::string&)> scan = [&](const Json& j, const std::string& path) {
    if (!j.is_object()) return;
    for (const auto& [key, value] : j.items()) {
      if (value.is_number() && frequency_keys().count(key) && std::abs(value.get<double>()) > kImplausibleFrequency) {
        c.warning(join(path, key), "implausibly large frequency (" + std::to_string(value.get<double>()) +
                                       " rad/ns); check the units declaration");
      }
      if (value.is_object()) scan(value, join(path, key));
    }
  };
  for (const char* stage : {"channels", "stirap_up", "dipole", "stirap_down"}) {
    if (resolved.contains(stage)) scan(resolved[stage], join("", stage));
  }
  if (s.model == Model::H3 || s.model == Model::H4) {
    if (!(s.span.end > s.span.start)) c.error("/span", "span must have positive length");
  }
  if (s.model == Model::Ryd4) {
    const double duration = s.span.duration();
    if (!(duration > 0.0)) c.error("/dipole/interval", "interval must have positive length");
    if (resolved.contains("cpr") && (s.cpr_window.start < 0.0 || s.cpr_window.end > duration + 1e-9 ||
                                     !(s.cpr_window.end > s.cpr_window.start))) {
      c.error("/cpr/window", "window (relative to the interval start) must be non-empty and inside the interval");
    }
    if (resolved.contains("phase") && s.gate_time > duration + 1e-9) {
      c.error("/phase/gate_time", "gate time lies beyond the interval");
    }
  }
  if (s.model == Model::Full16) {
    try {
      s.gate.validate();
    } catch (const ScheduleError& e) {
      c.error("/", e.what());
    }
  }
  if (s.model == Model::Ryd4 || s.model == Model::Full16) {
    const Envelope& mw = unwrap_ttl(s.model == Model::Ryd4 ? s.microwave : s.gate.microwave);
    const Envelope& chirp = unwrap_ttl(s.model == Model::Ryd4 ? s.detuning_rr : s.gate.detuning_rr);
    if (mw.kind() == EnvelopeKind::Constant && chirp.kind() == EnvelopeKind::ChirpedDetuning) {
      const double omega = std::get<envelope_params::Constant>(mw.params()).value;
      const double delta0 = std::get<envelope_params::Chirp>(chirp.params()).delta0;
      if (delta0 > 0.0) {
        const double expected = analysis::cpr_rabi_for_detuning(delta0);
        const double mismatch = std::abs(omega - expected) / delta0;
        if (mismatch > 0.01) {
          std::ostringstream msg;
          msg << "microwave Rabi frequency " << omega << " rad/ns departs from sqrt(15)/2 * delta0 = " << expected
              << " rad/ns by " << 100.0 * mismatch << "% of delta0; CPR is not expected";
          c.warning("/dipole/microwave", msg.str());
        }
      }
    }
  }
}

Json apply_point(const ExperimentConfig& config, std::span<const double> params) {
  if (params.size() != config.sweep.size()) throw std::invalid_argument("sweep point has the wrong number of values");
  Json point = config.echo;
  point.erase("sweep");
  for (std::size_t a = 0; a < params.size(); ++a) {
    for (const SweepTarget& t : config.sweep[a].targets) {
      point[Json::json_pointer(t.path)] = (params[a] * t.scale) * t.unit_factor;
    }
  }
  return point;
}

struct Analysis {
  std::vector<Diagnostic> diagnostics;
  Json resolved;
  Scenario scenario;
};

Analysis analyse(const Json& document) {
  Checker c;
  Analysis out;
  Model model{};
  if (!check_schema(c, document, model)) {
    out.diagnostics = std::move(c.out);
    return out;
  }
  out.resolved = normalise(document, model);
  try {
    Json base = out.resolved;
    base.erase("sweep");
    out.scenario = build_scenario(base);
    physics_checks(c, out.scenario, base);
  } catch (const std::exception& e) {
    c.error("/", e.what());
  }
  if (!c.failed() && out.resolved.contains("sweep")) {
    ExperimentConfig probe;
    probe.echo = out.resolved;
    for (const Json& axis : out.resolved["sweep"]["axes"]) {
      SweepAxisSpec spec{axis["name"], axis["values"].get<std::vector<double>>(), {}};
      for (const Json& t : axis["targets"]) spec.targets.push_back({t["path"], t["scale"], t["unit_factor"]});
      probe.sweep.push_back(std::move(spec));
    }
    // Every axis value must give a buildable scenario; the other axes sit at their first value.
    std::vector<double> params;
    for (const auto& axis : probe.sweep) params.push_back(axis.values.front());
    for (std::size_t a = 0; a < probe.sweep.size(); ++a) {
      const std::vector<double> first = params;
      for (double v : probe.sweep[a].values) {
        params[a] = v;
        try {
          Scenario s = build_scenario(apply_point(probe, params));
          if (s.model == Model::Full16) s.gate.validate();
        } catch (const std::exception& e) {
          c.error("/sweep/axes/" + std::to_string(a), "value " + std::to_string(v) + ": " + e.what());
        }
      }
      params = first;
    }
  }
  out.diagnostics = std::move(c.out);
  return out;
}

}  // namespace

Json to_json(const Diagnostic& d) {
  return {{"severity", d.severity == Severity::Error ? "error" : "warning"}, {"path", d.path}, {"message", d.message}};
}

InvalidConfig::InvalidConfig(std::vector<Diagnostic> diagnostics)
    : ConfigError([&diagnostics] {
        for (const auto& d : diagnostics) {
          if (d.severity == Severity::Error) return d.path + ": " + d.message;
        }
        return std::string("invalid configuration");
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::string to_string(Model model) {
  switch (model) {
    case Model::H3: return "h3";
    case Model::H4: return "h4";
    case Model::Ryd4: return "ryd4";
    case Model::Full16: return "full16";
  }
  return "";
}

const StateSpace& Scenario::space() const { return space_for(model); }

Hamiltonian Scenario::hamiltonian() const {
  switch (model) {
    case Model::H3: return models::build_h3(pump, stokes, delta);
    case Model::H4: return models::build_h4(pump, stokes, microwave, delta, detuning_rr);
    case Model::Ryd4: return models::build_h2q_ryd(manifold);
    case Model::Full16: return models::build_full_two_qubit(gate);
  }
  throw std::logic_error("unreachable");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<Diagnostic> validate_config(const Json& document) { return analyse(document).diagnostics; }

ExperimentConfig load_config(const Json& document) {
  Analysis a = analyse(document);
  const bool bad = std::any_of(a.diagnostics.begin(), a.diagnostics.end(),
                               [](const Diagnostic& d) { return d.severity == Severity::Error; });
  if (bad) throw InvalidConfig(std::move(a.diagnostics));
  ExperimentConfig config;
  config.echo = a.resolved;
  config.name = a.resolved["name"];
  config.description = a.resolved["description"];
  config.csv_name = a.resolved["output"]["csv"];
  config.summary_name = a.resolved["output"]["summary"];
  config.scenario = std::move(a.scenario);
  if (a.resolved.contains("sweep")) {
    for (const Json& axis : a.resolved["sweep"]["axes"]) {
      SweepAxisSpec spec{axis["name"], axis["values"].get<std::vector<double>>(), {}};
      for (const Json& t : axis["targets"]) spec.targets.push_back({t["path"], t["scale"], t["unit_factor"]});
      config.sweep.push_back(std::move(spec));
    }
  }
  return config;
}

Scenario scenario_at(const ExperimentConfig& config, std::span<const double> params) {
  return build_scenario(apply_point(config, params));
}

Envelope parse_envelope(const Json& j) {
  const std::string kind = j.at("kind");
  if (kind == "zero") return zero_envelope();
  if (kind == "constant") return constant(j.at("value"));
  if (kind == "gaussian") return gaussian(j.at("peak"), j.at("center"), j.at("width"));
  if (kind == "ddp-pump" || kind == "ddp-stokes") {
    const envelope_params::Ddp p{j.at("peak"), j.at("logistic"), j.value("mask", j.at("logistic").get<double>()),
                                 j.at("steepness"), j.at("order").get<int>(), j.at("center")};
    return kind == "ddp-pump" ? ddp_pump(p) : ddp_stokes(p);
  }
  if (kind == "ttl") return ttl_truncate(parse_envelope(j.at("inner")), j.at("on"), j.at("off"));
  if (kind == "chirped-detuning") {
    return chirped_detuning(j.at("delta0"), j.at("period"), j.at("phase"), j.value("origin", 0.0));
  }
  throw ConfigError("unknown envelope kind '" + kind + "'");
}

}  // namespace rydgate::harness
