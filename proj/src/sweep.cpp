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

#include "rydgate/sweep.hpp"

#include <exception>
#include <stdexcept>

namespace rydgate::analysis {

namespace {

SweepResult prepare(const std::vector<SweepAxis>& axes) {
  if (axes.empty()) throw std::invalid_argument("sweep: no axes");
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.values.empty()) throw std::invalid_argument("sweep: axis '" + axis.name + "' has no values");
    total *= axis.values.size();
  }
  SweepResult result{axes, std::vector<SweepPoint>(total)};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double>& params = result.points[flat].params;
    params.resize(axes.size());
    std::size_t rest = flat;
    for (std::size_t a = axes.size(); a-- > 0;) {
      params[a] = axes[a].values[rest % axes[a].values.size()];
      rest /= axes[a].values.size();
    }
  }
  return result;
}

void evaluate(SweepPoint& point, const PointEvaluator& evaluator) {
  try {
    point.outputs = evaluator(point.params);
  } catch (const std::exception& e) {
    point.error = e.what();
    if (point.error.empty()) point.error = "unknown error";
  }
}

}  // namespace

std::vector<std::size_t> SweepResult::shape() const {
  std::vector<std::size_t> s;
  for (const auto& axis : axes) s.push_back(axis.values.size());
  return s;
}

SweepResult sweep(const std::vector<SweepAxis>& axes, const PointEvaluator& evaluator) {
  SweepResult result = prepare(axes);
  const auto n = static_cast<long>(result.points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) evaluate(result.points[static_cast<std::size_t>(i)], evaluator);
  return result;
}

SweepResult sweep_serial(const std::vector<SweepAxis>& axes, const PointEvaluator& evaluator) {
  SweepResult result = prepare(axes);
  for (auto& point : result.points) evaluate(point, evaluator);
  return result;
}

void EvaluatorRegistry::add(std::string name, PointEvaluator evaluator) {
  evaluators_.insert_or_assign(std::move(name), std::move(evaluator));
}

const PointEvaluator& EvaluatorRegistry::at(std::string_view name) const {
  const auto it = evaluators_.find(name);
  if (it == evaluators_.end()) throw std::invalid_argument("unknown evaluator '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> EvaluatorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : evaluators_) out.push_back(name);
  return out;
}

SweepResult sweep(const std::vector<SweepAxis>& axes, std::string_view evaluator, const EvaluatorRegistry& registry) {
  return sweep(axes, registry.at(evaluator));
}

}  // namespace rydgate::analysis
