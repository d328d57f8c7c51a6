// Copyright 2026 The lgi-qutrit Authors
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

// Large-sample convergence of the noiseless simulator (3e8 shots in total).
// Built as its own binary so it can be skipped with `ctest -LE slow`.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lgi/parallel.hpp"
#include "lgi/shots.hpp"

using namespace lgi;

TEST_CASE("noiseless estimates converge to the exact values at N = 1e6") {
  constexpr double kAngle = 1.6 * std::numbers::pi;
  constexpr int kRepetitions = 100;
  const double exact = k3_exact_for_angle(PrecessionModel{}, kAngle, UpdateRule::VonNeumann).k3;
  ExperimentConfig c;
  c.rule = UpdateRule::VonNeumann;
  c.tau_angles = {kAngle};
  c.shots = 1000000;
  c.noise = NoiseModel::noiseless();

  std::vector<double> deviation(kRepetitions);
  parallel_for(kRepetitions, default_jobs(), [&](std::size_t seed) {
    ExperimentConfig local = c;
    local.seed = 1000 + seed;
    const SweepPoint p = run_sweep(local, 1).points.front();
    deviation[seed] = std::abs(p.k3 - exact) / p.std_error;
  });
  int beyond = 0;
  for (double d : deviation) beyond += d > 5.0 ? 1 : 0;
  // Fewer than 1% of 100 repetitions: none may leave the 5 sigma band.
  CHECK(beyond == 0);
}
