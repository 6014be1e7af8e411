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

#include <array>

#include <Eigen/Dense>

#include "rydgate/dynamics.hpp"
#include "rydgate/pulses.hpp"

namespace rydgate::models {

// Fixed basis orderings. Two-ion labels concatenate the single-ion labels of
// ion 1 and ion 2; ion 1 is the major index.
const StateSpace& ladder_space();            // 0, e, rS
const StateSpace& single_ion_space();        // 0, e, rS, rP
const StateSpace& rydberg_manifold_space();  // rSrS, rSrP, rPrS, rPrP
const StateSpace& two_ion_space();           // 00, 0e, ..., rPrP
/// Rotated manifold basis in which the resonant Hamiltonian is block diagonal.
const StateSpace& rotated_manifold_space();

// Instantaneous matrices (rad/ns).
Eigen::Matrix3d h3_matrix(double pump, double stokes, double delta);
Eigen::Matrix4d h4_matrix(double pump, double stokes, double microwave, double delta, double detuning_rr);
Eigen::Matrix4d h2q_ryd_matrix(double microwave, double detuning_rr, double v);

Hamiltonian build_h3(const Envelope& pump, const Envelope& stokes, double delta);
Hamiltonian build_h4(const Envelope& pump, const Envelope& stokes, const Envelope& microwave, double delta,
                     const Envelope& detuning_rr);

struct MixingAngles {
  double theta;      // atan(Omega_p / Omega_s), in [0, pi/2] for non-negative couplings
  double phi_mix;    // 1/2 arccot(Delta / Omega_rms), in (0, pi/2)
  double gamma;      // same angle as it appears in the four-level transform
  double omega_rms;  // sqrt(Omega_p^2 + Omega_s^2)
};

struct AdiabaticDecomposition {
  /// Columns are b1, d, b2 expressed in the (0, e, rS) basis.
  Eigen::Matrix3d transform;
  /// lambda_+, 0, lambda_- in the column order of `transform`.
  std::array<double, 3> energies;
  QuantumState bright1;
  QuantumState bright2;
  QuantumState dark;
};

struct Adiabatic3 {
  MixingAngles angles;
  AdiabaticDecomposition decomposition;
};

/// Bright/dark decomposition of the three-level ladder. Throws
/// std::domain_error("mixing angle undefined") when both couplings vanish.
Adiabatic3 adiabatic_decompose3(double pump, double stokes, double delta);

/// The four-level Hamiltonian in the (b1, d, b2, rP) frame, in closed form.
Eigen::Matrix4d adiabatic_transform4(double pump, double stokes, double microwave, double delta,
                                     double detuning_rr);

/// V0 Omega_mw^2 / (Omega_mw^2 + Delta_rr^2). Throws std::domain_error when both vanish.
double dd_strength(double v0, double microwave, double detuning_rr);

/// Rydberg-manifold Hamiltonian with an explicitly prescribed V(t).
Hamiltonian build_h2q_ryd(const Envelope& microwave, const Envelope& detuning_rr, const Envelope& v);

/// Dipole-dipole stage of a gate: the manifold is driven from `start` on,
/// V(t) follows dd_strength(v0, Omega_mw(t), Delta_rr(t)).
struct ManifoldSchedule {
  double start = 0.0;
  Envelope microwave;
  Envelope detuning_rr;
  double v0 = 0.0;
};

Hamiltonian build_h2q_ryd(const ManifoldSchedule& schedule);

struct Interval {
  double start;
  double end;
  double duration() const { return end - start; }
};

struct StirapPulses {
  Envelope pump;
  Envelope stokes;
};

/// Three-stage gate plan: STIRAP up, dipole-dipole, STIRAP down.
struct GateSchedule {
  Interval stirap_up{0.0, 0.0};
  Interval dipole{0.0, 0.0};
  Interval stirap_down{0.0, 0.0};
  StirapPulses up;
  StirapPulses down;
  Envelope microwave;
  Envelope detuning_rr;
  double delta = 0.0;
  double v0 = 0.0;

  /// Throws ScheduleError if stages overlap or are not contiguous, if a
  /// STIRAP channel reaches into the dipole stage or the microwave/chirp
  /// channels reach outside it.
  void validate() const;

  ManifoldSchedule manifold() const { return {dipole.start, microwave, detuning_rr, v0}; }
};

/// DDP pair centred on `stage` and hard-windowed to it. `reverse` mirrors the
/// pair in time (pump first), which maps |rS> back to |0>. The center field
/// of `shape` is ignored.
StirapPulses ddp_stage_pulses(const envelope_params::Ddp& shape, Interval stage, bool reverse);

/// H1 (x) 1 + 1 (x) H2 + V(t) (|rSrP><rPrS| + h.c.) over two_ion_space().
/// Validates the schedule first.
Hamiltonian build_full_two_qubit(const GateSchedule& schedule);

/// Permutation exchanging the two ions on a two-ion space (manifold or full).
Eigen::MatrixXd ion_exchange(const StateSpace& space);

/// <rSrS| exp(+i H t) |rSrS> for the resonant, constant-drive manifold.
Complex resonant_u11(double microwave, double v0, double t);

/// Columns are the rotated basis vectors expressed in the manifold basis.
Eigen::Matrix4d rotated_basis();

/// blockdiag([[0, Omega_mw], [Omega_mw, V0]], -V0, 0) over rotated_manifold_space().
Hamiltonian rotated_basis_hamiltonian(const Envelope& microwave, double v0);

}  // namespace rydgate::models
