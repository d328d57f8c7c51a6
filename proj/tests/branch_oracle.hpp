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

// Brute-force reference for two-time correlators. It enumerates measurement
// records explicitly with Eigen matrices: evolve, measure (collapse and
// normalize), evolve, measure, weighting each record by its probability.
// It shares no code with the library's trace-form evaluation.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "lgi/measurement.hpp"
#include "support.hpp"

namespace lgi::testing {

struct OracleJoint {
  std::array<std::array<double, 2>, 2> p{};  // [first][second], index 0 for -1
  double correlator = 0.0;
};

/// q per basis index; Lüders groups indices by q, von Neumann keeps them
/// apart. The first measurement collapses and renormalizes; the second only
/// needs probabilities.
inline OracleJoint brute_force_joint(const EMatrix& rho0, const EMatrix& u_a0, const EMatrix& u_ba,
                                     const std::vector<int>& q, UpdateRule rule) {
  const Eigen::Index dim = rho0.rows();
  // Outcome groups for the state update.
  std::vector<std::vector<Eigen::Index>> groups;
  if (rule == UpdateRule::Luders) {
    for (int value : {-1, +1}) {
      std::vector<Eigen::Index> g;
      for (Eigen::Index k = 0; k < dim; ++k) {
        if (q[k] == value) g.push_back(k);
      }
      if (!g.empty()) groups.push_back(g);
    }
  } else {
    for (Eigen::Index k = 0; k < dim; ++k) groups.push_back({k});
  }

  OracleJoint out;
  const EMatrix rho_a = u_a0 * rho0 * u_a0.adjoint();
  for (const auto& g : groups) {
    EMatrix proj = EMatrix::Zero(dim, dim);
    for (auto k : g) proj(k, k) = 1.0;
    const EMatrix unnorm = proj * rho_a * proj;
    const double p_first = unnorm.trace().real();
    if (p_first <= 0.0) continue;
    const EMatrix collapsed = unnorm / p_first;
    const EMatrix rho_b = u_ba * collapsed * u_ba.adjoint();
    const int q_first = q[g.front()];
    for (Eigen::Index m = 0; m < dim; ++m) {
      const double p_second = rho_b(m, m).real();
      const int q_second = q[m];
      out.p[q_first < 0 ? 0 : 1][q_second < 0 ? 0 : 1] += p_first * p_second;
      out.correlator += q_first * q_second * p_first * p_second;
    }
  }
  return out;
}

}  // namespace lgi::testing
