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

#include "lgi/measurement.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lgi/tolerance.hpp"

namespace lgi {

namespace {

int outcome_slot(int outcome) {
  if (outcome == -1) return 0;
  if (outcome == +1) return 1;
  std::ostringstream os;
  os << "unknown measurement outcome " << outcome << " (expected +1 or -1)";
  throw std::invalid_argument(os.str());
}

ComplexMatrix sandwich(const ComplexMatrix& p, const ComplexMatrix& rho) { return p * rho * p; }

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) { return u * rho * dagger(u); }

}  // namespace

std::string_view to_string(UpdateRule rule) {
  return rule == UpdateRule::Luders ? "luders" : "vonneumann";
}

UpdateRule parse_update_rule(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "luders" || lower == "lueders" || lower == "lsur") return UpdateRule::Luders;
  if (lower == "vonneumann" || lower == "von-neumann" || lower == "von_neumann" || lower == "vsur") {
    return UpdateRule::VonNeumann;
  }
  throw std::invalid_argument("unknown update rule '" + std::string(text) + "'");
}

DichotomousObservable DichotomousObservable::ground_vs_excited(std::size_t dim) {
  if (dim < 2) throw InvalidDimension("ground_vs_excited: dimension must be at least 2");
  std::vector<int> q(dim, +1);
  q[0] = -1;
  return DichotomousObservable(std::move(q));
}

DichotomousObservable::DichotomousObservable(std::vector<int> q_assignment)
    : q_(std::move(q_assignment)), plus_(q_.size()), minus_(q_.size()) {
  if (q_.size() < 2) throw InvalidDimension("DichotomousObservable: dimension must be at least 2");
  bool has_plus = false;
  bool has_minus = false;
  for (std::size_t k = 0; k < q_.size(); ++k) {
    outcome_slot(q_[k]);
    ComplexMatrix pk = ComplexMatrix::unit(q_.size(), k, k);
    if (q_[k] > 0) {
      has_plus = true;
      plus_ += pk;
      plus_rank1_.push_back(std::move(pk));
    } else {
      has_minus = true;
      minus_ += pk;
      minus_rank1_.push_back(std::move(pk));
    }
  }
  if (!has_plus || !has_minus) {
    throw std::invalid_argument("DichotomousObservable: q assignment must contain both +1 and -1");
  }
}

const ComplexMatrix& DichotomousObservable::eigenspace_projector(int outcome) const {
  return outcome_slot(outcome) == 1 ? plus_ : minus_;
}

const std::vector<ComplexMatrix>& DichotomousObservable::one_dim_projectors(int outcome) const {
  return outcome_slot(outcome) == 1 ? plus_rank1_ : minus_rank1_;
}

std::vector<OutcomeProjector> DichotomousObservable::projectors(UpdateRule rule) const {
  std::vector<OutcomeProjector> out;
  if (rule == UpdateRule::Luders) {
    out.push_back({-1, minus_});
    out.push_back({+1, plus_});
    return out;
  }
  for (std::size_t k = 0; k < q_.size(); ++k) out.push_back({q_[k], ComplexMatrix::unit(q_.size(), k, k)});
  return out;
}

MeasurementBranch measure_branch(const DensityOperator& rho, const DichotomousObservable& obs, int outcome,
                                 UpdateRule rule) {
  outcome_slot(outcome);
  if (rho.dim() != obs.dim()) throw DimensionMismatch("measure_branch: state and observable dimensions differ");
  ComplexMatrix branch(rho.dim());
  if (rule == UpdateRule::Luders) {
    branch = sandwich(obs.eigenspace_projector(outcome), rho.matrix());
  } else {
    for (const auto& pk : obs.one_dim_projectors(outcome)) branch += sandwich(pk, rho.matrix());
  }
  const double prob = std::clamp(trace(branch).real(), 0.0, 1.0);
  return {prob, DensityOperator(std::move(branch), /*branch=*/true)};
}

JointTable joint_distribution(const DensityOperator& rho0, const ComplexMatrix& u_alpha0,
                              const ComplexMatrix& u_beta_alpha, const DichotomousObservable& obs, UpdateRule rule) {
  if (rho0.dim() != obs.dim() || u_alpha0.dim() != obs.dim() || u_beta_alpha.dim() != obs.dim()) {
    throw DimensionMismatch("joint_distribution: operand dimensions differ");
  }
  const auto projectors = obs.projectors(rule);
  const ComplexMatrix at_alpha = conjugate(u_alpha0, rho0.matrix());
  JointTable table{};
  double imag_check = 0.0;
  for (const auto& first : projectors) {
    const ComplexMatrix at_beta = conjugate(u_beta_alpha, sandwich(first.projector, at_alpha));
    for (const auto& second : projectors) {
      const Complex p = trace_of_product(second.projector, at_beta);
      imag_check += std::abs(p.imag());
      table[outcome_slot(first.q)][outcome_slot(second.q)] += p.real();
    }
  }
  if (imag_check > tol::kImaginaryResidue) {
    throw ContractViolation("joint_distribution: joint probabilities carry an imaginary residue");
  }
  return table;
}

double correlator(const DensityOperator& rho0, const ComplexMatrix& u_alpha0, const ComplexMatrix& u_beta_alpha,
                  const DichotomousObservable& obs, UpdateRule rule) {
  if (rho0.is_branch()) throw ContractViolation("correlator: initial state must be normalized");
  if (rho0.dim() != obs.dim() || u_alpha0.dim() != obs.dim() || u_beta_alpha.dim() != obs.dim()) {
    throw DimensionMismatch("correlator: operand dimensions differ");
  }
  const auto projectors = obs.projectors(rule);
  const ComplexMatrix at_alpha = conjugate(u_alpha0, rho0.matrix());
  Complex sum{};
  for (const auto& first : projectors) {
    const ComplexMatrix at_beta = conjugate(u_beta_alpha, sandwich(first.projector, at_alpha));
    for (const auto& second : projectors) {
      sum += static_cast<double>(first.q * second.q) * trace_of_product(second.projector, at_beta);
    }
  }
  if (std::abs(sum.imag()) > tol::kImaginaryResidue) {
    std::ostringstream os;
    os << "correlator: imaginary residue " << sum.imag() << " exceeds " << tol::kImaginaryResidue;
    throw ContractViolation(os.str());
  }
  double c = sum.real();
  if (std::abs(c) > 1.0) {
    if (std::abs(c) - 1.0 > tol::kComposed) throw ContractViolation("correlator: value outside [-1, 1]");
    c = std::clamp(c, -1.0, 1.0);
  }
  return c;
}

CorrelatorResult assemble_k3(double c21, double c32, double c31) { return {c21, c32, c31, c21 + c32 - c31}; }

CorrelatorResult k3_exact(const PrecessionModel& model, double tau, UpdateRule rule) {
  const GridOperators ops = grid_operators(model, TimeGrid(tau));
  const auto obs = DichotomousObservable::ground_vs_excited(model.dim());
  const auto rho0 = DensityOperator::basis_state(model.dim(), 0);
  const double c21 = correlator(rho0, ops.u10, ops.u21, obs, rule);
  const double c32 = correlator(rho0, ops.u20(), ops.u32, obs, rule);
  const double c31 = correlator(rho0, ops.u10, ops.u31(), obs, rule);
  return assemble_k3(c21, c32, c31);
}

CorrelatorResult k3_exact_for_angle(const PrecessionModel& model, double tau_angle, UpdateRule rule) {
  return k3_exact(model, tau_angle / model.omega(), rule);
}

double k3_analytic(double tau_angle, UpdateRule rule) {
  const double x = tau_angle;
  if (rule == UpdateRule::Luders) {
    return -1.0 / 8.0 + 2.0 * std::cos(x) - std::cos(2.0 * x) + std::cos(4.0 * x) / 8.0;
  }
  return 1.0 / 16.0 + 2.0 * std::cos(x) - 1.25 * std::cos(2.0 * x) + 3.0 / 16.0 * std::cos(4.0 * x);
}

}  // namespace lgi
