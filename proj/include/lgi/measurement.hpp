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

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lgi/dynamics.hpp"
#include "lgi/linalg.hpp"

namespace lgi {

enum class UpdateRule { Luders, VonNeumann };

std::string_view to_string(UpdateRule rule);
/// Accepts "luders"/"lueders"/"lsur" and "vonneumann"/"von-neumann"/"vsur".
UpdateRule parse_update_rule(std::string_view text);

/// A projector together with the outcome (+1 or -1) it reports.
struct OutcomeProjector {
  int q = 0;
  ComplexMatrix projector;
};

/// Two-valued observable diagonal in the computational basis.
///
/// Each basis index carries q = +1 or q = -1. The eigenspace projectors are
/// the sums of the rank-1 basis projectors sharing a value; a Lüders update
/// uses the former, a von Neumann update the latter.
class DichotomousObservable {
 public:
  /// q = (-1, +1, +1): ground level reads -1, both metastable levels +1.
  static DichotomousObservable ground_vs_excited(std::size_t dim = 3);

  explicit DichotomousObservable(std::vector<int> q_assignment);

  std::size_t dim() const { return q_.size(); }
  const std::vector<int>& q_assignment() const { return q_; }

  /// Eigenspace projector for outcome +1 or -1.
  const ComplexMatrix& eigenspace_projector(int outcome) const;
  /// Rank-1 basis projectors whose basis index reports `outcome`.
  const std::vector<ComplexMatrix>& one_dim_projectors(int outcome) const;

  /// Projectors ranged over by the correlator sum under `rule`.
  std::vector<OutcomeProjector> projectors(UpdateRule rule) const;

 private:
  std::vector<int> q_;
  ComplexMatrix plus_;
  ComplexMatrix minus_;
  std::vector<ComplexMatrix> plus_rank1_;
  std::vector<ComplexMatrix> minus_rank1_;
};

struct MeasurementBranch {
  double probability = 0.0;
  DensityOperator branch;  // unnormalized; trace == probability
};

/// Post-measurement branch for `outcome`:
///   Lüders:      P rho P with P the eigenspace projector
///   von Neumann: sum_k P_k rho P_k over the rank-1 projectors of the outcome
/// Throws std::invalid_argument unless outcome is +1 or -1.
MeasurementBranch measure_branch(const DensityOperator& rho, const DichotomousObservable& obs, int outcome,
                                 UpdateRule rule);

/// P(Q_alpha, Q_beta) for measurements at t_alpha and t_beta, indexed
/// [a][b] with index 0 for -1 and 1 for +1.
using JointTable = std::array<std::array<double, 2>, 2>;

JointTable joint_distribution(const DensityOperator& rho0, const ComplexMatrix& u_alpha0,
                              const ComplexMatrix& u_beta_alpha, const DichotomousObservable& obs, UpdateRule rule);

/// Two-time correlator
///   C = sum_{l,m} q_l q_m Tr{ P_m U_ba P_l U_a0 rho0 U_a0^+ P_l U_ba^+ }
/// with P over eigenspace projectors (Lüders) or rank-1 projectors
/// (von Neumann). Intermediate states are never normalized.
double correlator(const DensityOperator& rho0, const ComplexMatrix& u_alpha0, const ComplexMatrix& u_beta_alpha,
                  const DichotomousObservable& obs, UpdateRule rule);

struct CorrelatorResult {
  double c21 = 0.0;
  double c32 = 0.0;
  double c31 = 0.0;
  double k3 = 0.0;
};

CorrelatorResult assemble_k3(double c21, double c32, double c31);

/// Three separate two-time experiments starting from the ground level: (t1,t2),
/// (t2,t3) with no measurement at t1, and (t1,t3).
CorrelatorResult k3_exact(const PrecessionModel& model, double tau, UpdateRule rule);

/// Same, parameterized by the angle omega * tau.
CorrelatorResult k3_exact_for_angle(const PrecessionModel& model, double tau_angle, UpdateRule rule);

/// Closed-form K3 of the spin-1 precession model as a function of omega*tau.
double k3_analytic(double tau_angle, UpdateRule rule);

namespace bounds {
inline constexpr double kClassical = 1.0;
inline constexpr double kLuders = 1.5;
inline constexpr double kAlgebraicMin = -3.0;
}  // namespace bounds

}  // namespace lgi
