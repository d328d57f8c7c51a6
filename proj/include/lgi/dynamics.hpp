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

#include <cstddef>

#include "lgi/linalg.hpp"

namespace lgi {

/// Spin precessing about x: H = omega * Jx. Time only ever enters through the
/// dimensionless product omega * dt.
class PrecessionModel {
 public:
  explicit PrecessionModel(double omega = 1.0, std::size_t dim = 3);

  double omega() const { return omega_; }
  std::size_t dim() const { return jx_.dim; }
  const AngularMomentumOp& jx() const { return jx_; }
  ComplexMatrix hamiltonian() const { return jx_.matrix * Complex{omega_}; }

 private:
  double omega_;
  AngularMomentumOp jx_;
};

/// Measurement moments t0 < t1 < t2 < t3: omega*(t1 - t0) = pi and
/// t2 - t1 = t3 - t2 = tau.
class TimeGrid {
 public:
  explicit TimeGrid(double tau);

  /// Grid with omega * tau equal to `angle`.
  static TimeGrid from_angle(const PrecessionModel& model, double angle);

  double tau() const { return tau_; }
  /// Moment t_k for k in 0..3 with t0 = 0.
  double moment(const PrecessionModel& model, int k) const;

 private:
  double tau_;
};

ComplexMatrix evolution_operator(const PrecessionModel& model, double dt);

/// Same as evolution_operator, parameterized by the rotation angle omega*dt.
ComplexMatrix evolution_for_angle(const PrecessionModel& model, double angle);

struct GridOperators {
  ComplexMatrix u10;
  ComplexMatrix u21;
  ComplexMatrix u32;

  ComplexMatrix u20() const { return u21 * u10; }
  ComplexMatrix u31() const { return u32 * u21; }
};

/// Closed form of exp(-i * angle * Jx) for spin 1. Entries at even offsets
/// (r + c even) are exactly real, the others exactly imaginary.
ComplexMatrix spin1_precession(double angle);

GridOperators grid_operators(const PrecessionModel& model, const TimeGrid& grid);

}  // namespace lgi
