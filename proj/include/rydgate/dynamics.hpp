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

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rydgate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Ordered, immutable set of basis labels. Copies share the label storage.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  std::size_t dim() const { return labels_->size(); }
  const std::vector<std::string>& labels() const { return *labels_; }
  const std::string& label(std::size_t i) const { return labels_->at(i); }
  bool contains(std::string_view label) const;
  /// Throws std::out_of_range for an unknown label.
  std::size_t index(std::string_view label) const;

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Complex amplitude vector over a StateSpace. The global phase is kept.
class QuantumState {
 public:
  QuantumState(StateSpace space, ComplexVector amplitudes);

  static QuantumState basis(const StateSpace& space, std::string_view label);

  const StateSpace& space() const { return space_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::string_view label) const { return amplitudes_(space_.index(label)); }
  double norm() const { return amplitudes_.norm(); }

 private:
  StateSpace space_;
  ComplexVector amplitudes_;
};

/// |<a|b>|^2. Throws std::invalid_argument when the spaces differ.
double fidelity(const QuantumState& a, const QuantumState& b);

struct Observation {
  double population;
  double phase;  // arg of the amplitude, in (-pi, pi]
};

Observation observe(const QuantumState& state, std::string_view label);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// t (ns) -> Hermitian matrix in rad/ns. Breakpoints mark times where the
/// evaluator is discontinuous; the integrator never steps across them.
class Hamiltonian {
 public:
  using Evaluator = std::function<void(double t, ComplexMatrix& out)>;

  Hamiltonian(StateSpace space, Evaluator evaluator, std::vector<double> breakpoints = {});

  const StateSpace& space() const { return space_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  ComplexMatrix operator()(double t) const;
  void evaluate(double t, ComplexMatrix& out) const;

  /// max |H - H^dagger| at time t.
  double hermiticity_defect(double t) const;

 private:
  StateSpace space_;
  Evaluator evaluator_;
  std::vector<double> breakpoints_;
};

inline constexpr double kHermiticityTolerance = 1e-12;

struct PropagateOptions {
  double tol = 1e-10;
  /// Trajectory sample spacing; ignored when sample_times is non-empty.
  double sample_dt = 0.1;
  /// Explicit sample grid inside [t0, t1]; t0 and t1 are always added.
  std::vector<double> sample_times;
};

struct PropagationResult {
  std::vector<double> times;
  std::vector<QuantumState> trajectory;

  const QuantumState& final_state() const { return trajectory.back(); }
};

/// Integrates i d(psi)/dt = H(t) psi from t0 to t1 (hbar = 1).
///
/// Uses a controlled Runge-Kutta-Fehlberg 7(8) stepper with absolute and
/// relative tolerance `tol`, split at the Hamiltonian's breakpoints; inside a
/// segment H takes its one-sided values at the ends. Throws
/// std::invalid_argument on bad arguments, NumericalError when the step falls
/// below 1e-9 max(1, |t|) ns or the Hamiltonian is not Hermitian at a sampled
/// time.
PropagationResult propagate(const Hamiltonian& hamiltonian, const QuantumState& initial,
                            double t0, double t1, const PropagateOptions& options = {});

}  // namespace rydgate
