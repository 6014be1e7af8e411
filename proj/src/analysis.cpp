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

#include "rydgate/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rydgate/errors.hpp"

namespace rydgate::analysis {

namespace {

constexpr double kGoldenTolerance = 0.01;  // ns

double return_population(const QuantumState& state) { return observe(state, "rSrS").population; }

std::string describe(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace

double perturbative_phase(std::span<const double> times, std::span<const double> p_rr, double v_r) {
  if (times.empty()) throw std::invalid_argument("perturbative_phase: empty trajectory");
  if (times.size() != p_rr.size()) throw std::invalid_argument("perturbative_phase: times and p_rr differ in length");
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    if (!(h > 0.0)) throw std::invalid_argument("perturbative_phase: times must be strictly increasing");
    integral += 0.5 * h * (p_rr[i] + p_rr[i - 1]);
  }
  return v_r * integral;
}

double perturbative_gate_time(double v_r) {
  if (!(v_r > 0.0)) throw std::invalid_argument("perturbative_gate_time: V_R must be positive");
  return 8.0 * std::numbers::pi / (3.0 * v_r);
}

double cpr_rabi_for_detuning(double delta0) {
  if (!(delta0 > 0.0)) throw std::invalid_argument("cpr_rabi_for_detuning: delta0 must be positive");
  return 0.5 * std::sqrt(15.0) * delta0;
}

double drift_compensated_gate_time(double gate_time, double v0, double delta0) {
  if (!(delta0 > 0.0)) throw std::invalid_argument("drift_compensated_gate_time: delta0 must be positive");
  return gate_time * std::cos(v0 / (6.0 * delta0));
}

std::vector<double> exchange_weight(const models::ManifoldSchedule& schedule, const PropagationResult& reference) {
  std::vector<double> w;
  w.reserve(reference.times.size());
  for (std::size_t i = 0; i < reference.times.size(); ++i) {
    const double t = reference.times[i];
    const double m = schedule.microwave(t);
    const double d = schedule.detuning_rr(t);
    const double shape = m == 0.0 ? 0.0 : models::dd_strength(1.0, m, d);
    const QuantumState& s = reference.trajectory[i];
    w.push_back(shape * 2.0 * std::real(std::conj(s.amplitude("rSrP")) * s.amplitude("rPrS")));
  }
  return w;
}

CprResult find_cpr_time(const models::ManifoldSchedule& schedule, models::Interval window, double threshold,
                        const PropagateOptions& options) {
  if (!(window.start >= 0.0) || !(window.end > window.start)) {
    throw std::invalid_argument("find_cpr_time: window must be a non-empty interval at or after the stage start");
  }
  const Hamiltonian h = models::build_h2q_ryd(schedule);
  const StateSpace& space = models::rydberg_manifold_space();
  const double t0 = schedule.start;
  const double t_end = t0 + window.end;

  PropagateOptions grid = options;
  grid.sample_times.clear();
  for (std::size_t k = 0;; ++k) {
    const double t = t0 + window.start + static_cast<double>(k) * options.sample_dt;
    if (t >= t_end) break;
    grid.sample_times.push_back(t);
  }
  const PropagationResult run = propagate(h, QuantumState::basis(space, "rSrS"), t0, t_end, grid);

  std::size_t first = 0;
  while (run.times[first] < t0 + window.start - 1e-9) ++first;
  std::size_t best = first;
  double best_p = return_population(run.trajectory[first]);
  for (std::size_t i = first + 1; i < run.times.size(); ++i) {
    const double p = return_population(run.trajectory[i]);
    if (p > best_p) {
      best = i;
      best_p = p;
    }
  }
  double best_t = run.times[best];

  if (best > first && best + 1 < run.times.size()) {
    const std::size_t left = best - 1;
    const double base_t = run.times[left];
    const QuantumState& base = run.trajectory[left];
    PropagateOptions local = options;
    local.sample_times.clear();
    local.sample_dt = 1.0;
    auto population_at = [&](double t) {
      if (t <= base_t) return return_population(base);
      return return_population(propagate(h, base, base_t, t, local).final_state());
    };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = run.times[left];
    double b = run.times[best + 1];
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = population_at(c);
    double fd = population_at(d);
    while (b - a > kGoldenTolerance) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = population_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = population_at(d);
      }
    }
    const double t_mid = 0.5 * (a + b);
    const double p_mid = population_at(t_mid);
    if (p_mid > best_p) {
      best_p = p_mid;
      best_t = t_mid;
    }
  }
  return {best_t - t0, best_p, best_p >= threshold};
}

PhaseResult entangling_phase(const models::ManifoldSchedule& schedule, double gate_time, double threshold,
                             const PropagateOptions& options) {
  if (!(gate_time > 0.0)) throw std::invalid_argument("entangling_phase: gate time must be positive");
  models::ManifoldSchedule reference = schedule;
  reference.v0 = 0.0;
  const QuantumState initial = QuantumState::basis(models::rydberg_manifold_space(), "rSrS");
  const double t1 = schedule.start + gate_time;

  PhaseResult out;
  out.trajectory = propagate(models::build_h2q_ryd(schedule), initial, schedule.start, t1, options);
  out.reference = propagate(models::build_h2q_ryd(reference), initial, schedule.start, t1, options);
  const Observation main = observe(out.trajectory.final_state(), "rSrS");
  const Observation ref = observe(out.reference.final_state(), "rSrS");
  out.return_population = main.population;
  out.reference_return_population = ref.population;
  if (main.population < threshold) {
    throw NumericalError("entangling_phase: V0 run return population " + describe(main.population) +
                             " below threshold " + describe(threshold),
                         t1);
  }
  if (ref.population < threshold) {
    throw NumericalError("entangling_phase: V0 = 0 reference run return population " + describe(ref.population) +
                             " below threshold " + describe(threshold),
                         t1);
  }
  out.entangling_phase = schedule.v0 == 0.0 ? 0.0 : wrap_phase(main.phase - ref.phase);
  return out;
}

double stirap_infidelity(const models::StirapPulses& pulses, double delta, models::Interval span,
                         const PropagateOptions& options) {
  const Hamiltonian h = models::build_h3(pulses.pump, pulses.stokes, delta);
  const PropagationResult r =
      propagate(h, QuantumState::basis(models::ladder_space(), "0"), span.start, span.end, options);
  return 1.0 - observe(r.final_state(), "rS").population;
}

GateRun run_full_gate(const models::GateSchedule& schedule, const PropagateOptions& options) {
  return run_full_gate(schedule, QuantumState::basis(models::two_ion_space(), "00"), options);
}

GateRun run_full_gate(const models::GateSchedule& schedule, const QuantumState& initial,
                      const PropagateOptions& options) {
  schedule.validate();
  models::GateSchedule reference = schedule;
  reference.v0 = 0.0;
  const double t0 = schedule.stirap_up.start;
  const double t1 = schedule.stirap_down.end;

  GateRun out;
  out.trajectory = propagate(models::build_full_two_qubit(schedule), initial, t0, t1, options);
  out.reference = schedule.v0 == 0.0
                      ? out.trajectory
                      : propagate(models::build_full_two_qubit(reference), initial, t0, t1, options);

  const StateSpace& space = initial.space();
  std::vector<std::size_t> excited;
  std::vector<std::size_t> rydberg;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const std::string& l = space.label(i);
    // Labels are ion-1 token followed by ion-2 token; "e" appears only as a token.
    if (l.front() == 'e' || l.back() == 'e') excited.push_back(i);
    if (l.size() == 4 && l[0] == 'r' && l[2] == 'r') rydberg.push_back(i);
  }

  GateReport& r = out.report;
  r.gate_time = schedule.dipole.duration();
  for (const QuantumState& s : out.trajectory.trajectory) {
    double p_e = 0.0;
    for (std::size_t i : excited) {
      const double p = std::norm(s.amplitudes()(static_cast<Eigen::Index>(i)));
      // |ee> carries an excitation on both ions.
      p_e += space.label(i) == "ee" ? 2.0 * p : p;
    }
    r.peak_excited = std::max(r.peak_excited, p_e);
  }
  const QuantumState& final_state = out.trajectory.final_state();
  for (std::size_t i : rydberg) r.residual_rydberg += std::norm(final_state.amplitudes()(static_cast<Eigen::Index>(i)));

  const ComplexVector& a = initial.amplitudes();
  const Complex overlap = a.dot(final_state.amplitudes());
  const Complex overlap_ref = a.dot(out.reference.final_state().amplitudes());
  r.return_fidelity = std::min(1.0, std::norm(overlap));
  r.entangling_phase = schedule.v0 == 0.0 ? 0.0 : wrap_phase(std::arg(overlap) - std::arg(overlap_ref));
  r.local_phase = wrap_phase(std::arg(overlap) - r.entangling_phase);
  return out;
}

GateReport full_gate_report(const models::GateSchedule& schedule, const PropagateOptions& options) {
  return run_full_gate(schedule, options).report;
}

}  // namespace rydgate::analysis
