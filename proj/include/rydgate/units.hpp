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

#include <numbers>

// All frequencies are angular frequencies in rad/ns and all times are in ns.
namespace rydgate::units {

inline constexpr double pi = std::numbers::pi;

/// Converts a frequency quoted as Omega/2pi in MHz to rad/ns.
constexpr double from_mhz(double mhz) { return mhz * 2.0 * pi * 1e-3; }

/// Inverse of from_mhz.
constexpr double to_mhz(double rad_per_ns) { return rad_per_ns / (2.0 * pi * 1e-3); }

}  // namespace rydgate::units
