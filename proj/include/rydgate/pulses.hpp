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

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rydgate {

enum class EnvelopeKind { Zero, Constant, Gaussian, DdpPump, DdpStokes, TtlWindowed, ChirpedDetuning };

class Envelope;

namespace envelope_params {

struct Zero {};

struct Constant {
  double value;
};

struct Gaussian {
  double peak;
  double center;
  double width;
};

/// Shared by both halves of a DDP pulse pair.
struct Ddp {
  double peak;       // Omega_0
  double logistic;   // T, timescale of the logistic mixing function
  double mask;       // T0, width of the hypergaussian mask
  double steepness;  // lambda
  int order;         // n, the mask is exp[-(s/T0)^(2n)]
  double center;
};

struct Ttl {
  std::shared_ptr<const Envelope> inner;
  double on;
  double off;
};

struct Chirp {
  double delta0;
  double period;
  double phase;
  double origin;  // time at which the sine argument equals `phase`
};

}  // namespace envelope_params

/// Immutable real waveform of time. Values are in rad/ns.
class Envelope {
 public:
  using Params = std::variant<envelope_params::Zero, envelope_params::Constant, envelope_params::Gaussian,
                              envelope_params::Ddp, envelope_params::Ttl, envelope_params::Chirp>;

  Envelope() : Envelope(EnvelopeKind::Zero, envelope_params::Zero{}) {}

  EnvelopeKind kind() const { return kind_; }
  const Params& params() const { return params_; }

  double operator()(double t) const;

  /// Closed interval outside of which the envelope is exactly zero; empty
  /// (first > second) for an identically zero envelope.
  std::pair<double, double> support() const;

  /// Times at which the envelope is discontinuous.
  std::vector<double> breakpoints() const;

 private:
  friend Envelope zero_envelope();
  friend Envelope constant(double);
  friend Envelope gaussian(double, double, double);
  friend Envelope ddp_pump(const envelope_params::Ddp&);
  friend Envelope ddp_stokes(const envelope_params::Ddp&);
  friend Envelope ttl_truncate(Envelope, double, double);
  friend Envelope chirped_detuning(double, double, double, double);

  Envelope(EnvelopeKind kind, Params params) : kind_(kind), params_(std::move(params)) {}

  EnvelopeKind kind_;
  Params params_;
};

std::string to_string(EnvelopeKind kind);

Envelope zero_envelope();
Envelope constant(double value);

/// peak * exp(-(t - center)^2 / width^2). Throws for width <= 0 or peak < 0.
Envelope gaussian(double peak, double center, double width);

/// Halves of the DDP pair. With s = t - center, f(s) = 1/(1 + exp(-lambda s/T)),
/// F(s) = exp[-(s/T0)^(2n)]: pump = Omega0 F sin(pi f/2), stokes = Omega0 F cos(pi f/2).
Envelope ddp_pump(const envelope_params::Ddp& p);
Envelope ddp_stokes(const envelope_params::Ddp& p);

struct DdpPair {
  Envelope pump;
  Envelope stokes;
};

DdpPair ddp_pair(double peak, double logistic_time, double steepness, double mask_time, int order,
                 double center);

/// inner on [on, off], exactly zero elsewhere. Throws for on >= off.
Envelope ttl_truncate(Envelope inner, double on, double off);

/// delta0 * (1 + sin((t - origin) pi / period + phase)^4). Throws for period <= 0.
Envelope chirped_detuning(double delta0, double period, double phase, double origin = 0.0);

}  // namespace rydgate
