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

// Compilation of qutrit evolution unitaries into two-level laser pulses.
//
// Level indices follow the ion's Zeeman structure:
//   0  S1/2(m=-1/2)   ground, Q = -1
//   1  D5/2(m=-1/2)
//   2  D5/2(m=+1/2)
//   3  S1/2(m=+1/2)   auxiliary, only used to route couplings
//
// The 729 nm laser drives S <-> D transitions only, so pulses may act on
// (0,1), (0,2), (1,3) and (2,3). Every pulse has the form
//
//   R(theta, phi) = [[ cos(theta/2),              -i sin(theta/2) e^{-i phi} ],
//                    [ -i sin(theta/2) e^{i phi},  cos(theta/2)             ]]
//
// on rows/columns (lo, hi) of its pair, identity elsewhere.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgi/linalg.hpp"

namespace lgi {

inline constexpr std::size_t kQutritLevels = 3;
inline constexpr std::size_t kIonLevels = 4;
inline constexpr std::size_t kAuxLevel = 3;
inline constexpr double kDefaultRabiFrequency = 2.0 * std::numbers::pi * 8.0e3;  // rad/s

/// Spectroscopic label of a matrix index.
std::string_view level_label(std::size_t index);

/// Unordered level pair stored as lo < hi.
struct LevelPair {
  std::size_t lo = 0;
  std::size_t hi = 1;

  static LevelPair of(std::size_t a, std::size_t b);
  friend bool operator==(const LevelPair&, const LevelPair&) = default;
};

std::string to_string(const LevelPair& pair);

class CouplingGraph {
 public:
  /// S <-> D transitions of the four-level ion.
  static CouplingGraph trapped_ion();

  explicit CouplingGraph(std::vector<LevelPair> allowed);

  bool allows(const LevelPair& pair) const;
  /// Allowed pairs, ground-level pairs first.
  const std::vector<LevelPair>& allowed() const { return allowed_; }

 private:
  std::vector<LevelPair> allowed_;
};

/// 2x2 R(theta, phi) block.
ComplexMatrix rotation_block(double theta, double phi);

/// `block` (2x2) placed on rows/columns (lo, hi) of a dim x dim identity.
ComplexMatrix embed_block(const ComplexMatrix& block, const LevelPair& pair, std::size_t dim);

/// A unitary that differs from identity only on one pair of levels.
struct TwoLevelFactor {
  LevelPair pair;
  ComplexMatrix block;  // 2x2 on (lo, hi)

  ComplexMatrix embedded(std::size_t dim) const { return embed_block(block, pair, dim); }
};

struct RotationPulse {
  LevelPair pair;
  double theta = 0.0;     // [0, 4pi)
  double phi = 0.0;       // (-pi, pi]
  double duration = 0.0;  // seconds, theta / rabi

  ComplexMatrix block() const { return rotation_block(theta, phi); }
  ComplexMatrix embedded(std::size_t dim = kIonLevels) const { return embed_block(block(), pair, dim); }
};

/// Pulses in matrix-product order: the sequence implements
/// pulses[0] * pulses[1] * ... * pulses[n-1], so the last pulse is played first.
struct PulseSequence {
  std::vector<RotationPulse> pulses;
  double rabi_frequency = kDefaultRabiFrequency;  // rad/s
  ComplexMatrix target;                           // 3x3

  double total_duration() const;
};

class NotRepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class LegalizationFailure : public std::runtime_error {
 public:
  LegalizationFailure(const std::string& what, ComplexMatrix offending);
  const ComplexMatrix& offending_factor() const { return offending_; }

 private:
  ComplexMatrix offending_;
};

/// U3 acting on levels 0..2, identity on the auxiliary level.
ComplexMatrix embed4(const ComplexMatrix& u3);

/// Reflection-based two-level decomposition: factors[0] * factors[1] * ... == u.
/// Column by column, a Hermitian reflection on (j, i) clears u(i, j); the last
/// one in each column also makes u(j, j) = 1. Identity factors are dropped.
std::vector<TwoLevelFactor> two_level_decompose(const ComplexMatrix& u);

/// Same column sweep with SU(2) Givens factors. For det(u) = 1 every factor,
/// including the trailing block, is special unitary.
std::vector<TwoLevelFactor> special_unitary_decompose(const ComplexMatrix& u);

/// Reads (theta, phi) from a block of R form; duration = theta / rabi.
/// Throws NotRepresentable if the block is not R(theta, phi) within 1e-10.
RotationPulse pulse_from_block(const ComplexMatrix& block, const LevelPair& pair,
                               double rabi_frequency = kDefaultRabiFrequency);

/// Turns qutrit two-level factors into pulses on allowed pairs.
///
/// Per factor, in order: identity is dropped; a diagonal of +-1 becomes
/// 2pi pulses (-I on a pair), with the auxiliary level absorbing odd sign
/// counts; a block of R form is one pulse; a block that is R form after
/// flipping the sign of one row gets a 2pi pulse in front; any other
/// special unitary block is a phase rotation (two pi pulses) followed by an
/// R pulse. A factor on a pair the graph forbids is conjugated through pi
/// pulses R(pi, +-pi/2) on a pair with level 0 (or the auxiliary level) and
/// legalized on the routed pair.
PulseSequence legalize(const std::vector<TwoLevelFactor>& factors, const CouplingGraph& graph,
                       double rabi_frequency = kDefaultRabiFrequency);

/// Ordered product of the embedded pulses (4x4).
ComplexMatrix reconstruct(const PulseSequence& seq);

/// Decompose and legalize a special unitary on the three qutrit levels.
/// Falls back to special_unitary_decompose when the reflection factors do not
/// legalize. The result reconstructs embed4(u3) within 1e-10 or this throws.
PulseSequence compile_unitary(const ComplexMatrix& u3, double rabi_frequency = kDefaultRabiFrequency,
                              const CouplingGraph& graph = CouplingGraph::trapped_ion());

/// exp(-i * epsilon * Jx) on the qutrit, compiled from its closed form so the
/// real/imaginary entry structure survives near epsilon = pi.
PulseSequence compile_precession(double epsilon, double rabi_frequency = kDefaultRabiFrequency);

// --- text formats -----------------------------------------------------------

/// FNV-1a 64 over the row-major dump of the target, one "%.15e %.15e\n" line
/// per entry (real, imaginary), entries with magnitude below 1e-14 written as 0.
std::uint64_t target_checksum(const ComplexMatrix& target);

/// Header line, then one pulse per line: `pair_lo pair_hi theta_rad phi_rad duration_s`.
void write_pulse_file(std::ostream& out, const PulseSequence& seq);

struct PulseFile {
  double rabi_frequency = 0.0;
  std::uint64_t checksum = 0;
  std::vector<RotationPulse> pulses;
};

PulseFile read_pulse_file(std::istream& in);

/// Nine whitespace separated `re im` pairs, row-major; `#` starts a comment.
ComplexMatrix read_matrix_file(std::istream& in);

}  // namespace lgi
