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
#include <vector>

#include "rydgate/dynamics.hpp"
#include "rydgate/models.hpp"

namespace rydgate::analysis {

struct GateReport {
  double gate_time = 0.0;         // duration of the dipole-dipole stage, ns
  double return_fidelity = 0.0;   // |<psi_i|psi_f>|^2
  double entangling_phase = 0.0;  // relative to the V0 = 0 reference run, (-pi, pi]
  double local_phase = 0.0;       // arg <psi_i|psi_f> - entangling_phase
  double peak_excited = 0.0;      // max over time of P_e, summed over both ions
  double residual_rydberg = 0.0;  // final population left in the Rydberg manifold
};

/// V_R * integral of p_rr over `times`, trapezoidal rule.
double perturbative_phase(std::span<const double> times, std::span<const double> p_rr, double v_r);

/// 8 pi / (3 V_R).
double perturbative_gate_time(double v_r);

/// sqrt(15)/2 * delta0: the microwave Rabi frequency that yields CPR under
/// the quartic-sine chirp.
double cpr_rabi_for_detuning(double delta0);

/// tau_g0 * cos(V0 / (6 delta0)).
double drift_compensated_gate_time(double gate_time, double v0, double delta0);

/// Weight whose V0-scaled integral is the first-order phase of |rSrS>:
/// (V(t)/V0) * 2 Re(conj(c_rSrP) c_rPrS), from a V0 = 0 manifold trajectory.
std::vector<double> exchange_weight(const models::ManifoldSchedule& schedule, const PropagationResult& reference);

struct CprResult {
  double gate_time = 0.0;           // measured from the stage start, ns
  double return_population = 0.0;   // P_rSrS at gate_time
  bool found = false;               // return_population >= threshold
};

/// Maximises P_rSrS(t) over `window` (times relative to schedule.start),
/// starting from |rSrS> at schedule.start. The sampled maximum is refined by
/// golden-section search to 0.01 ns when it lies inside the window.
CprResult find_cpr_time(const models::ManifoldSchedule& schedule, models::Interval window, double threshold = 0.99,
                        const PropagateOptions& options = {});

struct PhaseResult {
  double entangling_phase = 0.0;
  double return_population = 0.0;
  double reference_return_population = 0.0;
  PropagationResult trajectory;  // the V0 run
  PropagationResult reference;   // the V0 = 0 run, on the same grid
};

/// Runs the manifold with the given V0 and with V0 = 0 up to schedule.start +
/// gate_time and returns the wrapped phase difference of <rSrS|psi>. Throws
/// NumericalError naming the run whose return population is below
/// `threshold`.
PhaseResult entangling_phase(const models::ManifoldSchedule& schedule, double gate_time, double threshold = 0.9,
                             const PropagateOptions& options = {});

/// 1 - P_rS after propagating |0> through the ladder over `span`.
double stirap_infidelity(const models::StirapPulses& pulses, double delta, models::Interval span,
                         const PropagateOptions& options = {});

struct GateRun {
  GateReport report;
  PropagationResult trajectory;
  PropagationResult reference;
};

/// Propagates `initial` (default |00>) through all three stages of the full
/// two-ion model, plus a V0 = 0 reference run on the same grid. Throws
/// ScheduleError before propagating if the schedule is inconsistent.
GateRun run_full_gate(const models::GateSchedule& schedule, const PropagateOptions& options = {});
GateRun run_full_gate(const models::GateSchedule& schedule, const QuantumState& initial,
                      const PropagateOptions& options = {});

GateReport full_gate_report(const models::GateSchedule& schedule, const PropagateOptions& options = {});

}  // namespace rydgate::analysis
