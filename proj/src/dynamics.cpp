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

#include "lgi/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lgi {

PrecessionModel::PrecessionModel(double omega, std::size_t dim) : omega_(omega), jx_(lgi::jx(dim)) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("PrecessionModel: omega must be positive and finite");
  }
}

TimeGrid::TimeGrid(double tau) : tau_(tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("TimeGrid: tau must be finite and >= 0");
}

TimeGrid TimeGrid::from_angle(const PrecessionModel& model, double angle) {
  return TimeGrid(angle / model.omega());
}

double TimeGrid::moment(const PrecessionModel& model, int k) const {
  if (k < 0 || k > 3) throw std::out_of_range("TimeGrid::moment: k must be in 0..3");
  if (k == 0) return 0.0;
  return std::numbers::pi / model.omega() + static_cast<double>(k - 1) * tau_;
}

ComplexMatrix evolution_operator(const PrecessionModel& model, double dt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("evolution_operator: dt must be finite");
  return evolution_for_angle(model, model.omega() * dt);
}

ComplexMatrix evolution_for_angle(const PrecessionModel& model, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("evolution_for_angle: angle must be finite");
  return expm_hermitian(model.jx().matrix, angle);
}

ComplexMatrix spin1_precession(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("spin1_precession: angle must be finite");
  const double c = std::cos(angle);
  const Complex off{0.0, -std::sin(angle) / std::numbers::sqrt2};
  const double corner = 0.5 * (1.0 + c);
  const double anti = 0.5 * (c - 1.0);
  return {{corner, off, anti}, {off, c, off}, {anti, off, corner}};
}

GridOperators grid_operators(const PrecessionModel& model, const TimeGrid& grid) {
  const double tau_angle = model.omega() * grid.tau();
  ComplexMatrix step = evolution_for_angle(model, tau_angle);
  return {evolution_for_angle(model, std::numbers::pi), step, step};
}

}  // namespace lgi
