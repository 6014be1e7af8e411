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

// Shared helpers for the unit tests.

#include <random>
#include <string>
#include <vector>

#include "rydgate/dynamics.hpp"

namespace rydgate::testing {

inline StateSpace numbered_space(std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back("s" + std::to_string(i));
  return StateSpace(std::move(labels));
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (m + m.adjoint());
}

inline QuantumState random_state(const StateSpace& space, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(static_cast<Eigen::Index>(space.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return QuantumState(space, v / v.norm());
}

/// A + cos(w t) B + sin(w' t) C with random Hermitian A, B, C.
inline Hamiltonian random_driven_hamiltonian(const StateSpace& space, std::mt19937& rng, double scale = 0.3) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  const ComplexMatrix a = random_hermitian(n, rng, scale);
  const ComplexMatrix b = random_hermitian(n, rng, scale);
  const ComplexMatrix c = random_hermitian(n, rng, scale);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  const double w1 = w(rng);
  const double w2 = w(rng);
  return Hamiltonian(space, [=](double t, ComplexMatrix& out) { out = a + std::cos(w1 * t) * b + std::sin(w2 * t) * c; });
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace rydgate::testing
