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

#include "rydgate/models.hpp"

#include <cmath>
#include <stdexcept>

#include "rydgate/errors.hpp"

namespace rydgate::models {

namespace {

std::vector<double> merged_breakpoints(std::initializer_list<const Envelope*> envelopes,
                                       std::initializer_list<double> extra = {}) {
  std::vector<double> out(extra);
  for (const Envelope* e : envelopes) {
    const auto b = e->breakpoints();
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

bool is_empty(std::pair<double, double> support) { return support.first > support.second; }

constexpr double kStageSlack = 1e-9;

bool within(std::pair<double, double> support, Interval stage) {
  return is_empty(support) ||
         (support.first >= stage.start - kStageSlack && support.second <= stage.end + kStageSlack);
}

bool outside_open(std::pair<double, double> support, Interval stage) {
  if (is_empty(support) || stage.duration() <= 0.0) return true;
  return support.second <= stage.start + kStageSlack || support.first >= stage.end - kStageSlack;
}

// V(t) for a microwave-dressed pair; no dressing means no induced dipole.
double dressed_strength(double v0, double microwave, double detuning_rr) {
  return microwave == 0.0 ? 0.0 : dd_strength(v0, microwave, detuning_rr);
}

}  // namespace

const StateSpace& ladder_space() {
  static const StateSpace space({"0", "e", "rS"});
  return space;
}

const StateSpace& single_ion_space() {
  static const StateSpace space({"0", "e", "rS", "rP"});
  return space;
}

const StateSpace& rydberg_manifold_space() {
  static const StateSpace space({"rSrS", "rSrP", "rPrS", "rPrP"});
  return space;
}

const StateSpace& two_ion_space() {
  static const StateSpace space = [] {
    std::vector<std::string> labels;
    for (const auto& a : single_ion_space().labels()) {
      for (const auto& b : single_ion_space().labels()) labels.push_back(a + b);
    }
    return StateSpace(std::move(labels));
  }();
  return space;
}

const StateSpace& rotated_manifold_space() {
  static const StateSpace space({"rSrS+rPrP", "rSrP+rPrS", "rPrS-rSrP", "rPrP-rSrS"});
  return space;
}

Eigen::Matrix3d h3_matrix(double pump, double stokes, double delta) {
  Eigen::Matrix3d h;
  h << 0.0, 0.5 * pump, 0.0,
       0.5 * pump, delta, 0.5 * stokes,
       0.0, 0.5 * stokes, 0.0;
  return h;
}

Eigen::Matrix4d h4_matrix(double pump, double stokes, double microwave, double delta, double detuning_rr) {
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h.topLeftCorner<3, 3>() = h3_matrix(pump, stokes, delta);
  h(2, 3) = h(3, 2) = 0.5 * microwave;
  h(3, 3) = detuning_rr;
  return h;
}

Eigen::Matrix4d h2q_ryd_matrix(double microwave, double detuning_rr, double v) {
  const double m = microwave;
  const double d = detuning_rr;
  Eigen::Matrix4d h;
  h << 0.0, m, m, 0.0,
       m, 2.0 * d, 2.0 * v, m,
       m, 2.0 * v, 2.0 * d, m,
       0.0, m, m, 4.0 * d;
  return 0.5 * h;
}

Hamiltonian build_h3(const Envelope& pump, const Envelope& stokes, double delta) {
  return Hamiltonian(
      ladder_space(),
      [pump, stokes, delta](double t, ComplexMatrix& out) {
        out = h3_matrix(pump(t), stokes(t), delta).cast<Complex>();
      },
      merged_breakpoints({&pump, &stokes}));
}

Hamiltonian build_h4(const Envelope& pump, const Envelope& stokes, const Envelope& microwave, double delta,
                     const Envelope& detuning_rr) {
  return Hamiltonian(
      single_ion_space(),
      [pump, stokes, microwave, delta, detuning_rr](double t, ComplexMatrix& out) {
        out = h4_matrix(pump(t), stokes(t), microwave(t), delta, detuning_rr(t)).cast<Complex>();
      },
      merged_breakpoints({&pump, &stokes, &microwave, &detuning_rr}));
}

Adiabatic3 adiabatic_decompose3(double pump, double stokes, double delta) {
  const double rms = std::hypot(pump, stokes);
  if (rms == 0.0) throw std::domain_error("mixing angle undefined");
  const double theta = std::atan2(pump, stokes);
  // arccot(Delta / Omega_rms) on (0, pi) keeps b1 on lambda_+ for either sign of Delta.
  const double phi = 0.5 * std::atan2(rms, delta);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);

  Eigen::Matrix3d u;
  u.col(0) << st * sp, cp, ct * sp;
  u.col(1) << ct, 0.0, -st;
  u.col(2) << st * cp, -sp, ct * cp;

  const double root = std::sqrt(delta * delta + rms * rms);
  const auto& space = ladder_space();
  auto state = [&space](const Eigen::Vector3d& v) { return QuantumState(space, v.cast<Complex>()); };
  return {MixingAngles{theta, phi, phi, rms},
          AdiabaticDecomposition{u,
                                 {0.5 * (delta + root), 0.0, 0.5 * (delta - root)},
                                 state(u.col(0)),
                                 state(u.col(2)),
                                 state(u.col(1))}};
}

Eigen::Matrix4d adiabatic_transform4(double pump, double stokes, double microwave, double delta,
                                     double detuning_rr) {
  const Adiabatic3 a = adiabatic_decompose3(pump, stokes, delta);
  const double rms = a.angles.omega_rms;
  const double gamma = a.angles.gamma;
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h(0, 0) = a.decomposition.energies[0];
  h(2, 2) = a.decomposition.energies[2];
  h(3, 3) = detuning_rr;
  h(0, 3) = h(3, 0) = microwave * stokes * std::sin(gamma) / (2.0 * rms);
  h(1, 3) = h(3, 1) = -microwave * pump / (2.0 * rms);
  h(2, 3) = h(3, 2) = microwave * stokes * std::cos(gamma) / (2.0 * rms);
  return h;
}

double dd_strength(double v0, double microwave, double detuning_rr) {
  const double m2 = microwave * microwave;
  const double denom = m2 + detuning_rr * detuning_rr;
  if (denom == 0.0) throw std::domain_error("dd_strength: Omega_mw = Delta_rr = 0");
  return v0 * m2 / denom;
}

Hamiltonian build_h2q_ryd(const Envelope& microwave, const Envelope& detuning_rr, const Envelope& v) {
  return Hamiltonian(
      rydberg_manifold_space(),
      [microwave, detuning_rr, v](double t, ComplexMatrix& out) {
        out = h2q_ryd_matrix(microwave(t), detuning_rr(t), v(t)).cast<Complex>();
      },
      merged_breakpoints({&microwave, &detuning_rr, &v}));
}

Hamiltonian build_h2q_ryd(const ManifoldSchedule& schedule) {
  const Envelope microwave = schedule.microwave;
  const Envelope detuning_rr = schedule.detuning_rr;
  const double v0 = schedule.v0;
  return Hamiltonian(
      rydberg_manifold_space(),
      [microwave, detuning_rr, v0](double t, ComplexMatrix& out) {
        const double m = microwave(t);
        const double d = detuning_rr(t);
        out = h2q_ryd_matrix(m, d, dressed_strength(v0, m, d)).cast<Complex>();
      },
      merged_breakpoints({&microwave, &detuning_rr}));
}

void GateSchedule::validate() const {
  if (!(stirap_up.start < stirap_up.end)) throw ScheduleError("STIRAP-up stage must have positive length");
  if (!(stirap_down.start < stirap_down.end)) throw ScheduleError("STIRAP-down stage must have positive length");
  if (!(dipole.start <= dipole.end)) throw ScheduleError("dipole stage ends before it starts");
  if (std::abs(stirap_up.end - dipole.start) > kStageSlack || std::abs(dipole.end - stirap_down.start) > kStageSlack) {
    throw ScheduleError("stages must be contiguous and non-overlapping (up, dipole, down)");
  }
  if (!std::isfinite(delta) || !std::isfinite(v0)) throw ScheduleError("delta and v0 must be finite");
  const auto check_stirap = [this](const StirapPulses& p, Interval stage, const char* name) {
    for (const Envelope* e : {&p.pump, &p.stokes}) {
      if (!within(e->support(), stage) || !outside_open(e->support(), dipole)) {
        throw ScheduleError(std::string(name) + " pulses must vanish outside their stage (use a TTL window)");
      }
    }
  };
  check_stirap(up, stirap_up, "STIRAP-up");
  check_stirap(down, stirap_down, "STIRAP-down");
  if (!within(microwave.support(), dipole)) throw ScheduleError("microwave must vanish outside the dipole stage");
  if (!within(detuning_rr.support(), dipole)) {
    throw ScheduleError("detuning_rr must vanish outside the dipole stage");
  }
}

StirapPulses ddp_stage_pulses(const envelope_params::Ddp& shape, Interval stage, bool reverse) {
  envelope_params::Ddp centred = shape;
  centred.center = 0.5 * (stage.start + stage.end);
  Envelope pump = ddp_pump(centred);
  Envelope stokes = ddp_stokes(centred);
  if (reverse) std::swap(pump, stokes);
  return {ttl_truncate(std::move(pump), stage.start, stage.end),
          ttl_truncate(std::move(stokes), stage.start, stage.end)};
}

Hamiltonian build_full_two_qubit(const GateSchedule& schedule) {
  schedule.validate();
  const GateSchedule s = schedule;
  constexpr Eigen::Index kRsRp = 2 * 4 + 3;
  constexpr Eigen::Index kRpRs = 3 * 4 + 2;
  return Hamiltonian(
      two_ion_space(),
      [s](double t, ComplexMatrix& out) {
        const double pump = s.up.pump(t) + s.down.pump(t);
        const double stokes = s.up.stokes(t) + s.down.stokes(t);
        const double m = s.microwave(t);
        const double d = s.detuning_rr(t);
        const Eigen::Matrix4d h1 = h4_matrix(pump, stokes, m, s.delta, d);
        out.setZero();
        for (Eigen::Index a = 0; a < 4; ++a) {
          for (Eigen::Index b = 0; b < 4; ++b) {
            if (h1(a, b) == 0.0) continue;
            for (Eigen::Index j = 0; j < 4; ++j) {
              out(a * 4 + j, b * 4 + j) += h1(a, b);
              out(j * 4 + a, j * 4 + b) += h1(a, b);
            }
          }
        }
        const double v = dressed_strength(s.v0, m, d);
        out(kRsRp, kRpRs) += v;
        out(kRpRs, kRsRp) += v;
      },
      merged_breakpoints({&s.up.pump, &s.up.stokes, &s.down.pump, &s.down.stokes, &s.microwave, &s.detuning_rr},
                         {s.stirap_up.start, s.dipole.start, s.dipole.end, s.stirap_down.end}));
}

Eigen::MatrixXd ion_exchange(const StateSpace& space) {
  const auto& ion = single_ion_space().labels();
  auto split = [&ion](const std::string& label) -> std::pair<std::string, std::string> {
    for (const auto& head : ion) {
      if (label.rfind(head, 0) == 0) {
        const std::string tail = label.substr(head.size());
        for (const auto& t : ion) {
          if (t == tail) return {head, tail};
        }
      }
    }
    throw std::invalid_argument("ion_exchange: '" + label + "' is not a two-ion label");
  };
  const auto n = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto [a, b] = split(space.label(i));
    p(static_cast<Eigen::Index>(space.index(b + a)), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return p;
}

Complex resonant_u11(double microwave, double v0, double t) {
  if (t < 0.0) throw std::invalid_argument("resonant_u11: t must be >= 0");
  const double r = std::sqrt(4.0 * microwave * microwave + v0 * v0);
  const double half = 0.5 * t * r;
  const double sin_over_r = r > 0.0 ? std::sin(half) / r : 0.5 * t;
  const Complex inner(std::cos(half), -v0 * sin_over_r);
  return 0.5 * (1.0 + std::polar(1.0, 0.5 * v0 * t) * inner);
}

Eigen::Matrix4d rotated_basis() {
  const double k = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d r;
  // rows: rSrS, rSrP, rPrS, rPrP
  r << k, 0.0, 0.0, -k,
       0.0, k, -k, 0.0,
       0.0, k, k, 0.0,
       k, 0.0, 0.0, k;
  return r;
}

Hamiltonian rotated_basis_hamiltonian(const Envelope& microwave, double v0) {
  return Hamiltonian(
      rotated_manifold_space(),
      [microwave, v0](double t, ComplexMatrix& out) {
        const double m = microwave(t);
        out.setZero();
        out(0, 1) = out(1, 0) = m;
        out(1, 1) = v0;
        out(2, 2) = -v0;
      },
      microwave.breakpoints());
}

}  // namespace rydgate::models
