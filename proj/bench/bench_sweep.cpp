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

// Serial reference vs OpenMP sweep on a preset grid.
//
//   bench_sweep [preset] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "rydgate/runner.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string name = argc > 1 ? argv[1] : "fig5-delta-scan";
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  using namespace rydgate;
  const harness::ExperimentConfig config = harness::load_config(harness::preset_document(name));
  if (config.sweep.empty()) {
    std::fprintf(stderr, "preset %s has no sweep axes\n", name.c_str());
    return 1;
  }
  std::vector<analysis::SweepAxis> axes;
  for (const auto& a : config.sweep) axes.push_back({a.name, a.values});
  const auto registry = harness::make_registry(config);
  const auto& evaluator = registry.at(config.scenario.evaluator);

  analysis::SweepResult serial;
  analysis::SweepResult parallel;
  const double t_serial = best_of(repeats, [&] { serial = analysis::sweep_serial(axes, evaluator); });
  const double t_parallel = best_of(repeats, [&] { parallel = analysis::sweep(axes, evaluator); });

  bool identical = serial.points.size() == parallel.points.size();
  for (std::size_t i = 0; identical && i < serial.points.size(); ++i) {
    identical = serial.points[i].outputs == parallel.points[i].outputs && serial.points[i].error == parallel.points[i].error;
  }

  std::printf("preset        %s\n", name.c_str());
  std::printf("points        %zu\n", serial.points.size());
  std::printf("threads       %d\n", omp_get_max_threads());
  std::printf("serial  [s]   %.4f\n", t_serial);
  std::printf("openmp  [s]   %.4f\n", t_parallel);
  std::printf("speedup       %.2f\n", t_serial / t_parallel);
  std::printf("identical     %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
