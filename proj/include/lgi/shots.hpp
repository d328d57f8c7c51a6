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

// Shot-by-shot emulation of the three two-time experiments.
//
// Each shot prepares the ion, evolves it with the precession unitaries, and
// reads the dichotomous observable at two of the moments t1, t2, t3 using
// electron shelving:
//
//   Lüders       one shelving readout separating |0> from {|1>,|2>}
//   von Neumann  I   shelve: |0> versus the rest
//                II  swap |0> <-> |1> with R(pi, pi/2) on (0,1)
//                III shelve again: tells |1> from |2>
//                IV  swap back (only if another evolution follows)
//
// Q is -1 when step I fluoresces and +1 otherwise, for both rules; the rules
// differ only in the state the ion is left in.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgi/measurement.hpp"

namespace lgi {

struct NoiseModel {
  double init_fidelity = 0.994;  // population left in |0> by state preparation
  double op_fidelity = 0.98;     // per evolution block; p_depol = 1 - op_fidelity
  double readout_flip = 0.0;     // per binary shelving readout

  static NoiseModel noiseless() { return {1.0, 1.0, 0.0}; }

  /// Throws std::invalid_argument when a field leaves its range:
  /// init_fidelity and op_fidelity in (0, 1], readout_flip in [0, 0.5).
  void validate() const;
  bool is_noiseless() const { return init_fidelity == 1.0 && op_fidelity == 1.0 && readout_flip == 0.0; }
  /// No preparation or depolarizing error, so trajectories stay pure.
  bool keeps_states_pure() const { return init_fidelity == 1.0 && op_fidelity == 1.0; }
};

enum class MomentPair { T1T2 = 0, T2T3 = 1, T1T3 = 2 };

std::string_view to_string(MomentPair pair);

struct JointTally {
  /// counts[a][b] for first outcome a and second outcome b, index 0 for -1, 1 for +1.
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::uint64_t shots = 0;

  std::uint64_t count(int q_first, int q_second) const;
  void record(int q_first, int q_second);
  JointTally& operator+=(const JointTally& other);
};

struct ExperimentConfig {
  UpdateRule rule = UpdateRule::VonNeumann;
  std::vector<double> tau_angles;  // omega * tau, radians
  std::uint64_t shots = 10000;     // per two-time experiment
  NoiseModel noise{};
  std::uint64_t seed = 0;
  /// Run density matrices even when the trajectory would stay pure.
  bool force_density_path = false;

  void validate() const;
};

/// Evenly spaced angles: first + k (last - first)/(points - 1), k = 0..points-1.
std::vector<double> linspace_angles(double first, double last, std::size_t points);

/// All `config.shots` shots of one two-time experiment. The random stream of
/// shot s is keyed by (seed, tau_index, pair, s), so results do not depend on
/// how shots are scheduled.
JointTally run_pair(const ExperimentConfig& config, MomentPair pair, double tau_angle, std::size_t tau_index = 0);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// c = sum Q_i Q_j counts / N, stderr = sqrt((1 - c^2) / N). Needs N >= 2.
Estimate estimate(const JointTally& tally);

struct K3Estimate {
  double k3 = 0.0;
  double std_error = 0.0;
  Estimate c21;
  Estimate c32;
  Estimate c31;
};

/// Combines three independent experiments; errors add in quadrature.
K3Estimate estimate_k3(const JointTally& t21, const JointTally& t32, const JointTally& t31);

/// (k3 - bound) / stderr. Throws std::invalid_argument for stderr <= 0.
double sigma_violation(double k3, double std_error, double bound);

struct SweepPoint {
  double tau_angle = 0.0;
  double k3 = 0.0;
  double std_error = 0.0;
  double c21 = 0.0;
  double c32 = 0.0;
  double c31 = 0.0;
  double std_error21 = 0.0;
  double std_error32 = 0.0;
  double std_error31 = 0.0;
  std::uint64_t shots = 0;  // per two-time experiment; 0 for exact rows
};

struct SweepResult {
  UpdateRule rule = UpdateRule::VonNeumann;
  bool exact = false;
  std::vector<SweepPoint> points;
};

/// Monte Carlo sweep over config.tau_angles on `jobs` worker threads.
/// Output order follows the grid regardless of completion order.
SweepResult run_sweep(const ExperimentConfig& config, std::size_t jobs = 1);

/// Density-matrix K3 at each angle, zero error bars.
SweepResult exact_sweep(UpdateRule rule, const std::vector<double>& tau_angles, std::size_t jobs = 1);

}  // namespace lgi
