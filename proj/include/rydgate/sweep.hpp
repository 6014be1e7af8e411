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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rydgate::analysis {

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

using PointOutputs = std::map<std::string, double>;
/// Evaluates one grid point; params are ordered like the sweep axes.
using PointEvaluator = std::function<PointOutputs(std::span<const double> params)>;

struct SweepPoint {
  std::vector<double> params;
  PointOutputs outputs;
  std::string error;  // empty on success
};

/// Points are stored row-major: the last axis varies fastest.
struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<SweepPoint> points;

  std::vector<std::size_t> shape() const;
};

/// Evaluates every grid point with OpenMP. An exception thrown by the
/// evaluator is recorded on its point and does not stop the sweep.
SweepResult sweep(const std::vector<SweepAxis>& axes, const PointEvaluator& evaluator);

/// Single-threaded reference with identical output.
SweepResult sweep_serial(const std::vector<SweepAxis>& axes, const PointEvaluator& evaluator);

class EvaluatorRegistry {
 public:
  void add(std::string name, PointEvaluator evaluator);
  /// Throws std::invalid_argument for an unregistered name.
  const PointEvaluator& at(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, PointEvaluator, std::less<>> evaluators_;
};

SweepResult sweep(const std::vector<SweepAxis>& axes, std::string_view evaluator, const EvaluatorRegistry& registry);

}  // namespace rydgate::analysis
