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

#include "rydgate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <boost/numeric/odeint.hpp>

#include "rydgate/errors.hpp"

namespace rydgate {

StateSpace::StateSpace(std::vector<std::string> labels)
    : labels_(std::make_shared<const std::vector<std::string>>(std::move(labels))) {
  if (labels_->size() < 2) throw std::invalid_argument("StateSpace: dimension must be >= 2");
  for (std::size_t i = 0; i < labels_->size(); ++i) {
    for (std::size_t j = i + 1; j < labels_->size(); ++j) {
      if ((*labels_)[i] == (*labels_)[j]) {
        throw std::invalid_argument("StateSpace: duplicate label '" + (*labels_)[i] + "'");
      }
    }
  }
}

bool StateSpace::contains(std::string_view label) const {
  return std::find(labels_->begin(), labels_->end(), label) != labels_->end();
}

std::size_t StateSpace::index(std::string_view label) const {
  auto it = std::find(labels_->begin(), labels_->end(), label);
  if (it == labels_->end()) throw std::out_of_range("unknown basis label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_->begin());
}

QuantumState::QuantumState(StateSpace space, ComplexVector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw std::invalid_argument("QuantumState: amplitude count does not match space dimension");
  }
}

QuantumState QuantumState::basis(const StateSpace& space, std::string_view label) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(space.index(label))) = 1.0;
  return QuantumState(space, std::move(v));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (!(a.space() == b.space())) throw std::invalid_argument("fidelity: states live in different spaces");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double wrap_phase(double phase) {
  constexpr double pi = 3.14159265358979323846;
  double w = std::remainder(phase, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

Observation observe(const QuantumState& state, std::string_view label) {
  const Complex c = state.amplitude(label);
  // std::arg already maps to [-pi, pi]; fold -pi onto pi.
  return {std::norm(c), wrap_phase(std::arg(c))};
}

Hamiltonian::Hamiltonian(StateSpace space, Evaluator evaluator, std::vector<double> breakpoints)
    : space_(std::move(space)), evaluator_(std::move(evaluator)), breakpoints_(std::move(breakpoints)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

void Hamiltonian::evaluate(double t, ComplexMatrix& out) const {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (out.rows() != n || out.cols() != n) out.resize(n, n);
  evaluator_(t, out);
}

ComplexMatrix Hamiltonian::operator()(double t) const {
  ComplexMatrix h;
  evaluate(t, h);
  return h;
}

double Hamiltonian::hermiticity_defect(double t) const {
  const ComplexMatrix h = (*this)(t);
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

using OdeState = std::vector<Complex>;
namespace odeint = boost::numeric::odeint;

// Below this step (ns, relative to max(1, |t|)) the integrator is stalling.
constexpr double kMinStep = 1e-9;

struct SchrodingerRhs {
  const Hamiltonian* hamiltonian;
  ComplexMatrix h;
  // Open segment being integrated. Evaluations are kept strictly inside so a
  // discontinuity at an end point takes its one-sided value.
  double lo = 0.0;
  double hi = 0.0;

  void set_segment(double a, double b) {
    const double nudge = 8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
    lo = a + nudge;
    hi = b - nudge;
    if (lo > hi) lo = hi = 0.5 * (a + b);
  }

  void operator()(const OdeState& x, OdeState& dxdt, double t) {
    hamiltonian->evaluate(std::clamp(t, lo, hi), h);
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::Map<const ComplexVector> in(x.data(), n);
    Eigen::Map<ComplexVector> out(dxdt.data(), n);
    out.noalias() = Complex(0.0, -1.0) * (h * in);
  }
};

std::vector<double> build_sample_grid(double t0, double t1, const PropagateOptions& options) {
  std::vector<double> grid;
  const double guard = 1e-9 * std::max(1.0, std::abs(t1 - t0));
  if (options.sample_times.empty()) {
    if (!(options.sample_dt > 0.0)) throw std::invalid_argument("propagate: sample_dt must be positive");
    for (std::size_t k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) * options.sample_dt;
      if (t >= t1 - guard) break;
      grid.push_back(t);
    }
    grid.push_back(t1);
    return grid;
  }
  grid.push_back(t0);
  double previous = -std::numeric_limits<double>::infinity();
  for (double t : options.sample_times) {
    if (t < t0 || t > t1) throw std::invalid_argument("propagate: sample time outside [t0, t1]");
    if (t <= previous) throw std::invalid_argument("propagate: sample times must be strictly increasing");
    previous = t;
    if (t > grid.back() + guard && t < t1 - guard) grid.push_back(t);
  }
  grid.push_back(t1);
  return grid;
}

void check_hermitian(const Hamiltonian& h, double t) {
  const double defect = h.hermiticity_defect(t);
  if (!(defect < kHermiticityTolerance)) {
    throw NumericalError("Hamiltonian is not Hermitian at t = " + std::to_string(t) +
                             " ns (max |H - H^dagger| = " + std::to_string(defect) + ")",
                         t);
  }
}

}  // namespace

PropagationResult propagate(const Hamiltonian& hamiltonian, const QuantumState& initial, double t0,
                            double t1, const PropagateOptions& options) {
  if (!(initial.space() == hamiltonian.space())) {
    throw std::invalid_argument("propagate: state and Hamiltonian live in different spaces");
  }
  if (!(t1 > t0)) throw std::invalid_argument("propagate: requires t1 > t0");
  if (!(options.tol >= 1e-14 && options.tol <= 1e-6)) {
    throw std::invalid_argument("propagate: tol must lie in [1e-14, 1e-6]");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-8) throw std::invalid_argument("propagate: initial state is not normalized");

  const std::vector<double> samples = build_sample_grid(t0, t1, options);

  // Integration stops: samples plus interior breakpoints.
  std::vector<double> stops = samples;
  for (double b : hamiltonian.breakpoints()) {
    if (b > t0 && b < t1) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  OdeState x(initial.amplitudes().data(), initial.amplitudes().data() + initial.amplitudes().size());
  SchrodingerRhs rhs{&hamiltonian, {}};
  auto stepper = odeint::make_controlled(options.tol, options.tol, odeint::runge_kutta_fehlberg78<OdeState>());

  PropagationResult result;
  result.times.reserve(samples.size());
  result.trajectory.reserve(samples.size());
  const auto n = static_cast<Eigen::Index>(x.size());
  auto record = [&](double t) {
    result.times.push_back(t);
    result.trajectory.emplace_back(initial.space(), Eigen::Map<const ComplexVector>(x.data(), n));
  };

  check_hermitian(hamiltonian, t0);
  record(t0);

  double dt = std::min(0.01, (t1 - t0) / 16.0);
  std::size_t next_sample = 1;
  for (std::size_t s = 1; s < stops.size(); ++s) {
    const double a = stops[s - 1];
    const double b = stops[s];
    rhs.set_segment(a, b);
    double t = a;
    while (t < b) {
      const double remaining = b - t;
      if (remaining <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b))) break;
      const bool clipped = dt >= remaining;
      double step = clipped ? remaining : dt;
      const double proposed = dt;
      if (stepper.try_step(rhs, x, t, step) == odeint::success) {
        // try_step advanced t and suggests the next step size in `step`.
        dt = clipped ? std::max(proposed, step) : step;
        if (clipped) t = b;
      } else {
        dt = step;
      }
      if (dt < kMinStep * std::max(1.0, std::abs(t)) && t < b) {
        throw NumericalError("step size underflow at t = " + std::to_string(t) + " ns", t);
      }
    }
    for (const Complex& c : x) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw NumericalError("non-finite amplitude at t = " + std::to_string(b) + " ns", b);
      }
    }
    if (next_sample < samples.size() && samples[next_sample] == b) {
      check_hermitian(hamiltonian, b);
      record(b);
      ++next_sample;
    }
  }
  return result;
}

}  // namespace rydgate
