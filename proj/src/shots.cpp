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

#include "lgi/shots.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lgi/dynamics.hpp"
#include "lgi/parallel.hpp"
#include "lgi/pulse.hpp"
#include "lgi/rng.hpp"

namespace lgi {

namespace {

using Vec3 = std::array<Complex, 3>;
using Mat3 = std::array<Complex, 9>;

Mat3 to_mat3(const ComplexMatrix& m) {
  if (m.dim() != 3) throw DimensionMismatch("shot simulator works on three levels");
  Mat3 out{};
  for (std::size_t k = 0; k < 9; ++k) out[k] = m.data()[k];
  return out;
}

Vec3 act(const Mat3& m, const Vec3& v) {
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
          m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) {
      const Complex ark = a[3 * r + k];
      for (int c = 0; c < 3; ++c) out[3 * r + c] += ark * b[3 * k + c];
    }
  }
  return out;
}

Mat3 adjoint(const Mat3& a) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out[3 * c + r] = std::conj(a[3 * r + c]);
  }
  return out;
}

/// Everything a shot needs, built once per (pair, tau).
struct Protocol {
  UpdateRule rule;
  NoiseModel noise;
  std::vector<Mat3> before_first;   // evolution blocks up to the first readout
  std::vector<Mat3> before_second;  // blocks between the readouts
  Mat3 swap{};                      // step II, R(pi, pi/2) on (0,1)
  Mat3 unswap{};                    // step IV
};

Protocol make_protocol(const ExperimentConfig& config, MomentPair pair, double tau_angle) {
  const PrecessionModel model(1.0, 3);
  const Mat3 u10 = to_mat3(evolution_for_angle(model, std::numbers::pi));
  const Mat3 step = to_mat3(evolution_for_angle(model, tau_angle));
  Protocol p{config.rule, config.noise, {}, {}, {}, {}};
  switch (pair) {
    case MomentPair::T1T2:
      p.before_first = {u10};
      p.before_second = {step};
      break;
    case MomentPair::T2T3:
      p.before_first = {u10, step};
      p.before_second = {step};
      break;
    case MomentPair::T1T3:
      p.before_first = {u10};
      p.before_second = {step, step};
      break;
  }
  const ComplexMatrix swap = embed_block(rotation_block(std::numbers::pi, std::numbers::pi / 2.0), LevelPair{0, 1}, 3);
  p.swap = to_mat3(swap);
  p.unswap = to_mat3(dagger(swap));
  return p;
}

/// Binary shelving record: true when the ion fluoresces (|0> populated).
bool record(bool bright, double flip, CounterRng& rng) {
  if (flip > 0.0 && rng.bernoulli(flip)) return !bright;
  return bright;
}

// --- pure-state trajectories --------------------------------------------

/// Projects onto |0> (bright) or its complement; returns whether bright.
bool shelve_pure(Vec3& psi, CounterRng& rng) {
  const double p0 = std::norm(psi[0]);
  const bool bright = rng.uniform() < p0;
  if (bright) {
    psi = {psi[0] / std::sqrt(p0), 0.0, 0.0};
  } else {
    const double norm = std::sqrt(std::max(1.0 - p0, 0.0));
    psi = {0.0, psi[1] / norm, psi[2] / norm};
  }
  return bright;
}

std::array<int, 2> pure_shot(const Protocol& p, CounterRng& rng) {
  Vec3 psi{1.0, 0.0, 0.0};
  for (const auto& u : p.before_first) psi = act(u, psi);

  const bool bright = shelve_pure(psi, rng);
  const int q_first = record(bright, p.noise.readout_flip, rng) ? -1 : +1;
  if (p.rule == UpdateRule::VonNeumann) {  // steps II-IV run whatever step I showed
    psi = act(p.swap, psi);
    const bool was_one = shelve_pure(psi, rng);
    record(was_one, p.noise.readout_flip, rng);
    psi = act(p.unswap, psi);
  }

  for (const auto& u : p.before_second) psi = act(u, psi);
  const bool bright_second = rng.uniform() < std::norm(psi[0]);
  const int q_second = record(bright_second, p.noise.readout_flip, rng) ? -1 : +1;
  return {q_first, q_second};
}

// --- density-matrix trajectories ----------------------------------------

void evolve(Mat3& rho, const Mat3& u, const Mat3& u_dag, double depol) {
  rho = multiply(multiply(u, rho), u_dag);
  if (depol > 0.0) {
    for (auto& x : rho) x *= (1.0 - depol);
    for (int k = 0; k < 3; ++k) rho[4 * k] += depol / 3.0;
  }
}

bool shelve_density(Mat3& rho, CounterRng& rng) {
  const double p0 = std::clamp(rho[0].real(), 0.0, 1.0);
  const bool bright = rng.uniform() < p0;
  if (bright) {
    rho = Mat3{};
    rho[0] = 1.0;
  } else {
    const double rest = std::max(1.0 - p0, 0.0);
    rho[0] = rho[1] = rho[2] = rho[3] = rho[6] = 0.0;
    for (int k : {4, 5, 7, 8}) rho[k] /= rest;
  }
  return bright;
}

std::array<int, 2> density_shot(const Protocol& p, CounterRng& rng, const std::vector<Mat3>& first_dag,
                                const std::vector<Mat3>& second_dag) {
  const double depol = 1.0 - p.noise.op_fidelity;
  const double leak = 0.5 * (1.0 - p.noise.init_fidelity);
  Mat3 rho{};
  rho[0] = p.noise.init_fidelity;
  rho[4] = leak;
  rho[8] = leak;
  for (std::size_t k = 0; k < p.before_first.size(); ++k) evolve(rho, p.before_first[k], first_dag[k], depol);

  const bool bright = shelve_density(rho, rng);
  const int q_first = record(bright, p.noise.readout_flip, rng) ? -1 : +1;
  if (p.rule == UpdateRule::VonNeumann) {  // steps II-IV run whatever step I showed
    evolve(rho, p.swap, p.unswap, 0.0);  // step II: no block noise, only step IV gets it
    const bool was_one = shelve_density(rho, rng);
    record(was_one, p.noise.readout_flip, rng);
    evolve(rho, p.unswap, p.swap, depol);
  }

  for (std::size_t k = 0; k < p.before_second.size(); ++k) evolve(rho, p.before_second[k], second_dag[k], depol);
  const bool bright_second = rng.uniform() < std::clamp(rho[0].real(), 0.0, 1.0);
  const int q_second = record(bright_second, p.noise.readout_flip, rng) ? -1 : +1;
  return {q_first, q_second};
}

int slot(int q) { return q < 0 ? 0 : 1; }

}  // namespace

void NoiseModel::validate() const {
  if (!(init_fidelity > 0.0 && init_fidelity <= 1.0)) throw std::invalid_argument("init_fidelity must lie in (0, 1]");
  if (!(op_fidelity > 0.0 && op_fidelity <= 1.0)) throw std::invalid_argument("op_fidelity must lie in (0, 1]");
  if (!(readout_flip >= 0.0 && readout_flip < 0.5)) throw std::invalid_argument("readout_flip must lie in [0, 0.5)");
}

std::string_view to_string(MomentPair pair) {
  switch (pair) {
    case MomentPair::T1T2:
      return "t1,t2";
    case MomentPair::T2T3:
      return "t2,t3";
    case MomentPair::T1T3:
      return "t1,t3";
  }
  return "?";
}

std::uint64_t JointTally::count(int q_first, int q_second) const { return counts[slot(q_first)][slot(q_second)]; }

void JointTally::record(int q_first, int q_second) {
  ++counts[slot(q_first)][slot(q_second)];
  ++shots;
}

JointTally& JointTally::operator+=(const JointTally& other) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) counts[a][b] += other.counts[a][b];
  }
  shots += other.shots;
  return *this;
}

void ExperimentConfig::validate() const {
  if (tau_angles.empty()) throw std::invalid_argument("experiment needs at least one tau angle");
  for (double a : tau_angles) {
    if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("tau angles must be finite and >= 0");
  }
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  noise.validate();
}

std::vector<double> linspace_angles(double first, double last, std::size_t points) {
  if (points == 0) throw std::invalid_argument("linspace_angles: need at least one point");
  if (points == 1) return {first};
  std::vector<double> out(points);
  const double step = (last - first) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) out[k] = first + step * static_cast<double>(k);
  out.back() = last;
  return out;
}

JointTally run_pair(const ExperimentConfig& config, MomentPair pair, double tau_angle, std::size_t tau_index) {
  config.noise.validate();
  if (config.shots < 1) throw std::invalid_argument("shots must be >= 1");
  const Protocol protocol = make_protocol(config, pair, tau_angle);
  const auto pair_index = static_cast<std::uint64_t>(pair);
  JointTally tally;
  if (config.noise.keeps_states_pure() && !config.force_density_path) {
    for (std::uint64_t s = 0; s < config.shots; ++s) {
      CounterRng rng(shot_key(config.seed, tau_index, pair_index, s));
      const auto q = pure_shot(protocol, rng);
      tally.record(q[0], q[1]);
    }
    return tally;
  }
  std::vector<Mat3> first_dag;
  std::vector<Mat3> second_dag;
  for (const auto& u : protocol.before_first) first_dag.push_back(adjoint(u));
  for (const auto& u : protocol.before_second) second_dag.push_back(adjoint(u));
  for (std::uint64_t s = 0; s < config.shots; ++s) {
    CounterRng rng(shot_key(config.seed, tau_index, pair_index, s));
    const auto q = density_shot(protocol, rng, first_dag, second_dag);
    tally.record(q[0], q[1]);
  }
  return tally;
}

Estimate estimate(const JointTally& tally) {
  if (tally.shots < 2) throw std::invalid_argument("estimate: need at least two shots");
  const auto n = static_cast<double>(tally.shots);
  const double same = static_cast<double>(tally.counts[0][0] + tally.counts[1][1]);
  const double differ = static_cast<double>(tally.counts[0][1] + tally.counts[1][0]);
  const double c = (same - differ) / n;
  return {c, std::sqrt(std::max(0.0, 1.0 - c * c) / n)};
}

K3Estimate estimate_k3(const JointTally& t21, const JointTally& t32, const JointTally& t31) {
  K3Estimate out;
  out.c21 = estimate(t21);
  out.c32 = estimate(t32);
  out.c31 = estimate(t31);
  out.k3 = out.c21.value + out.c32.value - out.c31.value;
  out.std_error = std::sqrt(out.c21.std_error * out.c21.std_error + out.c32.std_error * out.c32.std_error +
                            out.c31.std_error * out.c31.std_error);
  return out;
}

double sigma_violation(double k3, double std_error, double bound) {
  if (!(std_error > 0.0)) throw std::invalid_argument("sigma_violation: standard error must be positive");
  return (k3 - bound) / std_error;
}

SweepResult run_sweep(const ExperimentConfig& config, std::size_t jobs) {
  config.validate();
  if (config.shots < 2) throw std::invalid_argument("sweep estimates need at least two shots");
  SweepResult result{config.rule, false, std::vector<SweepPoint>(config.tau_angles.size())};
  parallel_for(config.tau_angles.size(), jobs, [&](std::size_t i) {
    const double angle = config.tau_angles[i];
    const K3Estimate k = estimate_k3(run_pair(config, MomentPair::T1T2, angle, i),
                                     run_pair(config, MomentPair::T2T3, angle, i),
                                     run_pair(config, MomentPair::T1T3, angle, i));
    result.points[i] = {angle,           k.k3,           k.std_error,     k.c21.value,  k.c32.value,
                        k.c31.value,     k.c21.std_error, k.c32.std_error, k.c31.std_error, config.shots};
  });
  return result;
}

SweepResult exact_sweep(UpdateRule rule, const std::vector<double>& tau_angles, std::size_t jobs) {
  if (tau_angles.empty()) throw std::invalid_argument("exact_sweep: need at least one tau angle");
  const PrecessionModel model(1.0, 3);
  SweepResult result{rule, true, std::vector<SweepPoint>(tau_angles.size())};
  parallel_for(tau_angles.size(), jobs, [&](std::size_t i) {
    const CorrelatorResult r = k3_exact_for_angle(model, tau_angles[i], rule);
    SweepPoint& pt = result.points[i];
    pt.tau_angle = tau_angles[i];
    pt.k3 = r.k3;
    pt.c21 = r.c21;
    pt.c32 = r.c32;
    pt.c31 = r.c31;
  });
  return result;
}

}  // namespace lgi
