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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rydgate/config.hpp"
#include "rydgate/runner.hpp"
#include "rydgate/sweep.hpp"

using namespace rydgate;
using namespace rydgate::analysis;

namespace {

PointOutputs quadratic(std::span<const double> p) {
  double x = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) x += (i + 1.0) * p[i] * p[i];
  return {{"value", x}, {"first", p[0]}};
}

bool same_points(const SweepResult& a, const SweepResult& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].params != b.points[i].params || a.points[i].outputs != b.points[i].outputs ||
        a.points[i].error != b.points[i].error)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("grid layout is row-major") {
  const std::vector<SweepAxis> axes{{"a", {1.0, 2.0}}, {"b", {10.0, 20.0, 30.0}}};
  const SweepResult r = sweep(axes, quadratic);
  CHECK(r.shape() == std::vector<std::size_t>{2, 3});
  REQUIRE(r.points.size() == 6);
  CHECK(r.points[0].params == std::vector<double>{1.0, 10.0});
  CHECK(r.points[1].params == std::vector<double>{1.0, 20.0});
  CHECK(r.points[3].params == std::vector<double>{2.0, 10.0});
  CHECK(r.points[5].params == std::vector<double>{2.0, 30.0});
}

TEST_CASE("single point equals a direct evaluation") {
  const std::vector<double> p{0.3, -1.5};
  const SweepResult r = sweep({{"a", {p[0]}}, {"b", {p[1]}}}, quadratic);
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].outputs == quadratic(p));
}

TEST_CASE("parallel and serial sweeps agree bit for bit") {
  std::vector<double> xs;
  for (int i = 0; i < 37; ++i) xs.push_back(0.1 * i);
  const std::vector<SweepAxis> axes{{"x", xs}, {"y", {-1.0, 0.5, 2.0}}};
  const SweepResult serial = sweep_serial(axes, quadratic);
  CHECK(same_points(serial, sweep(axes, quadratic)));
  CHECK(same_points(sweep(axes, quadratic), sweep(axes, quadratic)));
}

TEST_CASE("reversing an axis reverses the output") {
  const auto config = harness::load_config(harness::preset_document("fig5-delta-scan"));
  const auto registry = harness::make_registry(config);
  std::vector<double> values{23.4, 23.9, 25.1};
  const SweepResult forward = sweep({{"delta0", values}}, config.scenario.evaluator, registry);
  std::reverse(values.begin(), values.end());
  const SweepResult backward = sweep({{"delta0", values}}, config.scenario.evaluator, registry);
  REQUIRE(forward.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(forward.points[i].outputs == backward.points[2 - i].outputs);
}

TEST_CASE("failures are recorded per point") {
  const PointEvaluator flaky = [](std::span<const double> p) -> PointOutputs {
    if (p[0] < 0.0) throw std::domain_error("negative");
    return {{"root", std::sqrt(p[0])}};
  };
  const SweepResult r = sweep({{"x", {4.0, -1.0, 9.0}}}, flaky);
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[0].error.empty());
  CHECK(r.points[1].error == "negative");
  CHECK(r.points[1].outputs.empty());
  CHECK(r.points[2].outputs.at("root") == 3.0);
  CHECK(same_points(r, sweep_serial({{"x", {4.0, -1.0, 9.0}}}, flaky)));
}

TEST_CASE("registry lookup") {
  EvaluatorRegistry registry;
  registry.add("quadratic", quadratic);
  CHECK(registry.names() == std::vector<std::string>{"quadratic"});
  CHECK_THROWS_AS(registry.at("cubic"), std::invalid_argument);
  CHECK_THROWS_AS(sweep({{"x", {1.0}}}, "cubic", registry), std::invalid_argument);
  CHECK(sweep({{"x", {2.0}}}, "quadratic", registry).points[0].outputs.at("value") == 4.0);
}

TEST_CASE("empty grids") {
  CHECK_THROWS_AS(sweep({{"x", {}}}, quadratic), std::invalid_argument);
  CHECK_THROWS_AS(sweep({}, quadratic), std::invalid_argument);
}

TEST_CASE("delta0 scan resolves the CPR jumps") {
  const auto config = harness::load_config(harness::preset_document("fig5-delta-scan"));
  const auto registry = harness::make_registry(config);
  std::vector<double> values;
  for (int i = 0; i <= 24; ++i) values.push_back(22.0 + 0.25 * i);
  const SweepResult r = sweep({{"delta0", values}}, config.scenario.evaluator, registry);
  int jumps = 0;
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    REQUIRE(r.points[i].error.empty());
    const double step = r.points[i].outputs.at("gate_time") - r.points[i - 1].outputs.at("gate_time");
    if (std::abs(step) > 3.0) ++jumps;
  }
  CHECK(jumps >= 1);
}
