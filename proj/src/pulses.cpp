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

#include "rydgate/pulses.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rydgate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Logistic mixing and hypergaussian mask of the DDP pair.
struct DdpFactors {
  double mask;
  double angle;  // pi f / 2
};

DdpFactors ddp_factors(const envelope_params::Ddp& p, double t) {
  const double s = t - p.center;
  const double f = 1.0 / (1.0 + std::exp(-p.steepness * s / p.logistic));
  const double mask = std::exp(-std::pow(s / p.mask, 2 * p.order));
  return {mask, 0.5 * std::numbers::pi * f};
}

void check_ddp(const envelope_params::Ddp& p) {
  if (!(p.peak >= 0.0)) throw std::invalid_argument("ddp: peak must be >= 0");
  if (!(p.logistic > 0.0) || !(p.mask > 0.0)) throw std::invalid_argument("ddp: timescales must be positive");
  if (p.order < 1) throw std::invalid_argument("ddp: order n must be >= 1");
  if (!std::isfinite(p.steepness)) throw std::invalid_argument("ddp: steepness must be finite");
}

}  // namespace

double Envelope::operator()(double t) const {
  return std::visit(
      Overloaded{
          [](const envelope_params::Zero&) { return 0.0; },
          [](const envelope_params::Constant& p) { return p.value; },
          [t](const envelope_params::Gaussian& p) {
            const double x = (t - p.center) / p.width;
            return p.peak * std::exp(-x * x);
          },
          [this, t](const envelope_params::Ddp& p) {
            const DdpFactors f = ddp_factors(p, t);
            return p.peak * f.mask * (kind_ == EnvelopeKind::DdpPump ? std::sin(f.angle) : std::cos(f.angle));
          },
          [t](const envelope_params::Ttl& p) { return (t >= p.on && t <= p.off) ? (*p.inner)(t) : 0.0; },
          [t](const envelope_params::Chirp& p) {
            const double s = std::sin((t - p.origin) * std::numbers::pi / p.period + p.phase);
            const double s2 = s * s;
            return p.delta0 * (1.0 + s2 * s2);
          },
      },
      params_);
}

std::pair<double, double> Envelope::support() const {
  return std::visit(
      Overloaded{
          [](const envelope_params::Zero&) { return std::pair{kInf, -kInf}; },
          [](const envelope_params::Constant& p) {
            return p.value == 0.0 ? std::pair{kInf, -kInf} : std::pair{-kInf, kInf};
          },
          [](const envelope_params::Ttl& p) {
            const auto [lo, hi] = p.inner->support();
            return std::pair{std::max(lo, p.on), std::min(hi, p.off)};
          },
          [](const auto&) { return std::pair{-kInf, kInf}; },
      },
      params_);
}

std::vector<double> Envelope::breakpoints() const {
  if (const auto* p = std::get_if<envelope_params::Ttl>(&params_)) {
    std::vector<double> out = p->inner->breakpoints();
    out.push_back(p->on);
    out.push_back(p->off);
    return out;
  }
  return {};
}

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::Zero: return "zero";
    case EnvelopeKind::Constant: return "constant";
    case EnvelopeKind::Gaussian: return "gaussian";
    case EnvelopeKind::DdpPump: return "ddp-pump";
    case EnvelopeKind::DdpStokes: return "ddp-stokes";
    case EnvelopeKind::TtlWindowed: return "ttl";
    case EnvelopeKind::ChirpedDetuning: return "chirped-detuning";
  }
  return "unknown";
}

Envelope zero_envelope() { return Envelope(EnvelopeKind::Zero, envelope_params::Zero{}); }

Envelope constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("constant: value must be finite");
  return Envelope(EnvelopeKind::Constant, envelope_params::Constant{value});
}

Envelope gaussian(double peak, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian: width T must be positive");
  if (!(peak >= 0.0)) throw std::invalid_argument("gaussian: peak must be >= 0");
  return Envelope(EnvelopeKind::Gaussian, envelope_params::Gaussian{peak, center, width});
}

Envelope ddp_pump(const envelope_params::Ddp& p) {
  check_ddp(p);
  return Envelope(EnvelopeKind::DdpPump, p);
}

Envelope ddp_stokes(const envelope_params::Ddp& p) {
  check_ddp(p);
  return Envelope(EnvelopeKind::DdpStokes, p);
}

DdpPair ddp_pair(double peak, double logistic_time, double steepness, double mask_time, int order,
                 double center) {
  const envelope_params::Ddp p{peak, logistic_time, mask_time, steepness, order, center};
  return {ddp_pump(p), ddp_stokes(p)};
}

Envelope ttl_truncate(Envelope inner, double on, double off) {
  if (!(on < off)) throw std::invalid_argument("ttl_truncate: requires t_on < t_off");
  return Envelope(EnvelopeKind::TtlWindowed,
                  envelope_params::Ttl{std::make_shared<const Envelope>(std::move(inner)), on, off});
}

Envelope chirped_detuning(double delta0, double period, double phase, double origin) {
  if (!(period > 0.0)) throw std::invalid_argument("chirped_detuning: period T must be positive");
  return Envelope(EnvelopeKind::ChirpedDetuning, envelope_params::Chirp{delta0, period, phase, origin});
}

}  // namespace rydgate
