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

#include "lgi/pulse.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "lgi/dynamics.hpp"
#include "lgi/tolerance.hpp"

namespace lgi {

namespace {

constexpr double kPi = std::numbers::pi;
// Entries this small are treated as exact zeros when choosing a branch.
constexpr double kNegligible = 1e-13;

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

ComplexMatrix block_of(const ComplexMatrix& m, const LevelPair& pair) {
  return {{m(pair.lo, pair.lo), m(pair.lo, pair.hi)}, {m(pair.hi, pair.lo), m(pair.hi, pair.hi)}};
}

bool is_rotation_form(const ComplexMatrix& b, double tol) {
  const Complex d0 = b(0, 0);
  const Complex d1 = b(1, 1);
  return std::abs(d0.imag()) <= tol && std::abs(d0 - d1) <= tol && std::abs(b(1, 0) + std::conj(b(0, 1))) <= tol &&
         std::abs(std::norm(d0) + std::norm(b(0, 1)) - 1.0) <= tol;
}

bool is_identity_block(const ComplexMatrix& b) {
  return max_abs_distance(b, ComplexMatrix::identity(2)) <= tol::kStructural;
}

/// Sign pattern of a diagonal +-1 block, or nothing.
std::optional<std::array<bool, 2>> sign_pattern(const ComplexMatrix& b) {
  if (std::abs(b(0, 1)) > tol::kStructural || std::abs(b(1, 0)) > tol::kStructural) return std::nullopt;
  std::array<bool, 2> negative{};
  for (std::size_t k = 0; k < 2; ++k) {
    const Complex d = b(k, k);
    if (std::abs(d - 1.0) <= tol::kStructural) {
      negative[k] = false;
    } else if (std::abs(d + 1.0) <= tol::kStructural) {
      negative[k] = true;
    } else {
      return std::nullopt;
    }
  }
  return negative;
}

class Emitter {
 public:
  Emitter(const CouplingGraph& graph, double rabi) : graph_(graph), rabi_(rabi) {}

  std::vector<RotationPulse> take() { return std::move(pulses_); }

  void pulse(const ComplexMatrix& block, const LevelPair& pair) {
    if (!graph_.allows(pair)) {
      throw LegalizationFailure("pulse on forbidden pair " + to_string(pair), embed_block(block, pair, kIonLevels));
    }
    RotationPulse p = pulse_from_block(block, pair, rabi_);
    if (p.theta == 0.0) return;
    pulses_.push_back(p);
  }

  /// -1 on every listed level via 2pi pulses (each is -I on its pair).
  void signs(std::vector<std::size_t> levels, const ComplexMatrix& for_diagnostics) {
    std::sort(levels.begin(), levels.end());
    if (levels.empty()) return;
    if (levels.size() % 2 != 0) {
      throw LegalizationFailure("odd number of sign flips cannot be realized by 2pi pulses", for_diagnostics);
    }
    const auto& allowed = graph_.allowed();
    auto covers = [&](const std::vector<LevelPair>& chosen) {
      std::array<int, kIonLevels> flips{};
      for (const auto& pr : chosen) {
        ++flips[pr.lo];
        ++flips[pr.hi];
      }
      for (std::size_t k = 0; k < kIonLevels; ++k) {
        const bool want = std::binary_search(levels.begin(), levels.end(), k);
        if ((flips[k] % 2 == 1) != want) return false;
      }
      return true;
    };
    for (const auto& pr : allowed) {
      if (covers({pr})) {
        two_pi(pr);
        return;
      }
    }
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      for (std::size_t j = i + 1; j < allowed.size(); ++j) {
        if (covers({allowed[i], allowed[j]})) {
          two_pi(allowed[i]);
          two_pi(allowed[j]);
          return;
        }
      }
    }
    throw LegalizationFailure("sign pattern not coverable by allowed pairs", for_diagnostics);
  }

  /// Emits pulses whose product equals embed(block, pair), up to a -1 on the
  /// auxiliary level when `aux_free`.
  void factor(const ComplexMatrix& block, const LevelPair& pair, bool aux_free, int depth = 0) {
    const ComplexMatrix diagnostic = embed_block(block, pair, kIonLevels);
    if (is_identity_block(block)) return;

    if (const auto pattern = sign_pattern(block)) {
      std::vector<std::size_t> levels;
      if ((*pattern)[0]) levels.push_back(pair.lo);
      if ((*pattern)[1]) levels.push_back(pair.hi);
      if (levels.size() % 2 != 0) {
        if (!aux_free) throw LegalizationFailure("odd sign pattern with the auxiliary level in use", diagnostic);
        levels.push_back(kAuxLevel);
      }
      signs(levels, diagnostic);
      return;
    }

    if (!graph_.allows(pair)) {
      route(block, pair, aux_free, depth, diagnostic);
      return;
    }

    if (is_rotation_form(block, tol::kComposed)) {
      pulse(block, pair);
      return;
    }

    // Rotation form after flipping one row: block = S * R with S = diag(..,-1,..).
    if (aux_free) {
      for (std::size_t row : {std::size_t{1}, std::size_t{0}}) {
        ComplexMatrix flipped = block;
        flipped(row, 0) = -flipped(row, 0);
        flipped(row, 1) = -flipped(row, 1);
        if (is_rotation_form(flipped, tol::kComposed)) {
          signs({row == 0 ? pair.lo : pair.hi, kAuxLevel}, diagnostic);
          pulse(flipped, pair);
          return;
        }
      }
    }

    const Complex det = block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0);
    if (std::abs(det - 1.0) <= tol::kComposed) {
      phase_then_rotation(block, pair);
      return;
    }
    if (aux_free && std::abs(det + 1.0) <= tol::kComposed) {
      ComplexMatrix flipped = block;
      flipped(1, 0) = -flipped(1, 0);
      flipped(1, 1) = -flipped(1, 1);
      signs({pair.hi, kAuxLevel}, diagnostic);
      phase_then_rotation(flipped, pair);
      return;
    }
    throw LegalizationFailure("factor on " + to_string(pair) + " is not special unitary up to a sign", diagnostic);
  }

 private:
  void two_pi(const LevelPair& pair) { pulses_.push_back({pair, 2.0 * kPi, 0.0, 2.0 * kPi / rabi_}); }

  // block = diag(e^{i chi}, e^{-i chi}) * R', and the phase rotation is
  // R(pi, 0) * R(pi, chi + pi).
  void phase_then_rotation(const ComplexMatrix& block, const LevelPair& pair) {
    const double chi = std::abs(block(0, 0)) > kNegligible ? std::arg(block(0, 0)) : 0.0;
    const Complex undo = std::polar(1.0, -chi);
    ComplexMatrix rest = block;
    rest(0, 0) *= undo;
    rest(0, 1) *= undo;
    rest(1, 0) *= std::conj(undo);
    rest(1, 1) *= std::conj(undo);
    if (std::abs(chi) > kNegligible) {
      pulse(rotation_block(kPi, 0.0), pair);
      pulse(rotation_block(kPi, wrap_phase(chi + kPi)), pair);
    }
    pulse(rest, pair);
  }

  // factor = W * M * W^dagger with W = R(pi, pi/2) swapping a routing level
  // into one end of the forbidden pair; M then sits on an allowed pair.
  void route(const ComplexMatrix& block, const LevelPair& pair, bool aux_free, int depth,
             const ComplexMatrix& diagnostic) {
    if (depth > 0) throw LegalizationFailure("nested routing exhausted for " + to_string(pair), diagnostic);
    const ComplexMatrix full = embed_block(block, pair, kIonLevels);
    for (std::size_t via : {std::size_t{0}, kAuxLevel}) {
      if (via == pair.lo || via == pair.hi) continue;
      if (via == kAuxLevel && !aux_free) continue;
      for (std::size_t swapped : {pair.lo, pair.hi}) {
        const std::size_t kept = swapped == pair.lo ? pair.hi : pair.lo;
        const LevelPair swap_pair = LevelPair::of(via, swapped);
        const LevelPair moved_pair = LevelPair::of(via, kept);
        if (!graph_.allows(swap_pair) || !graph_.allows(moved_pair)) continue;
        const ComplexMatrix swap_block = rotation_block(kPi, kPi / 2.0);
        const ComplexMatrix w = embed_block(swap_block, swap_pair, kIonLevels);
        const ComplexMatrix moved = dagger(w) * full * w;
        const ComplexMatrix moved_block = block_of(moved, moved_pair);
        if (max_abs_distance(moved, embed_block(moved_block, moved_pair, kIonLevels)) > tol::kStructural) continue;
        pulse(swap_block, swap_pair);
        factor(moved_block, moved_pair, aux_free && via != kAuxLevel, depth + 1);
        pulse(dagger(swap_block), swap_pair);
        return;
      }
    }
    throw LegalizationFailure("no routing level for forbidden pair " + to_string(pair), diagnostic);
  }

  const CouplingGraph& graph_;
  double rabi_;
  std::vector<RotationPulse> pulses_;
};

void require_unitary(const ComplexMatrix& u, const char* what) {
  if (!is_unitary(u, tol::kStructural)) throw ContractViolation(std::string(what) + ": input is not unitary within 1e-12");
}

Complex determinant3(const ComplexMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Shared column sweep. `make` returns the 2x2 W that clears (i, j) given the
/// pivot a = u(j, j), the entry b = u(i, j) and whether i is the last row.
template <typename MakeStep>
std::vector<TwoLevelFactor> column_sweep(const ComplexMatrix& u, MakeStep make) {
  const std::size_t n = u.dim();
  if (n < 2) throw InvalidDimension("two-level decomposition needs dim >= 2");
  std::vector<TwoLevelFactor> factors;
  ComplexMatrix rest = u;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      const LevelPair pair{j, i};
      const std::optional<ComplexMatrix> w = make(rest(j, j), rest(i, j), i + 1 == n);
      if (!w) continue;
      rest = embed_block(*w, pair, n) * rest;
      rest(i, j) = 0.0;
      const ComplexMatrix f = dagger(*w);
      if (!is_identity_block(f)) factors.push_back({pair, f});
    }
  }
  const LevelPair last{n - 2, n - 1};
  ComplexMatrix tail = block_of(rest, last);
  if (!is_identity_block(tail)) factors.push_back({last, tail});
  return factors;
}

}  // namespace

std::string_view level_label(std::size_t index) {
  switch (index) {
    case 0:
      return "S1/2(m=-1/2)";
    case 1:
      return "D5/2(m=-1/2)";
    case 2:
      return "D5/2(m=+1/2)";
    case 3:
      return "S1/2(m=+1/2)";
    default:
      throw std::out_of_range("level_label: index must be in 0..3");
  }
}

LevelPair LevelPair::of(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("LevelPair: levels must differ");
  return a < b ? LevelPair{a, b} : LevelPair{b, a};
}

std::string to_string(const LevelPair& pair) {
  return "(" + std::to_string(pair.lo) + "," + std::to_string(pair.hi) + ")";
}

CouplingGraph CouplingGraph::trapped_ion() {
  return CouplingGraph({LevelPair{0, 1}, LevelPair{0, 2}, LevelPair{1, 3}, LevelPair{2, 3}});
}

CouplingGraph::CouplingGraph(std::vector<LevelPair> allowed) : allowed_(std::move(allowed)) {
  for (const auto& p : allowed_) {
    if (p.lo >= p.hi || p.hi >= kIonLevels) throw std::invalid_argument("CouplingGraph: invalid pair " + to_string(p));
  }
}

bool CouplingGraph::allows(const LevelPair& pair) const {
  return std::find(allowed_.begin(), allowed_.end(), pair) != allowed_.end();
}

ComplexMatrix rotation_block(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex minus_i{0.0, -1.0};
  return {{c, minus_i * s * std::polar(1.0, -phi)}, {minus_i * s * std::polar(1.0, phi), c}};
}

ComplexMatrix embed_block(const ComplexMatrix& block, const LevelPair& pair, std::size_t dim) {
  if (block.dim() != 2) throw DimensionMismatch("embed_block: block must be 2x2");
  if (pair.lo >= pair.hi || pair.hi >= dim) throw InvalidDimension("embed_block: pair outside matrix");
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m(pair.lo, pair.lo) = block(0, 0);
  m(pair.lo, pair.hi) = block(0, 1);
  m(pair.hi, pair.lo) = block(1, 0);
  m(pair.hi, pair.hi) = block(1, 1);
  return m;
}

double PulseSequence::total_duration() const {
  double sum = 0.0;
  for (const auto& p : pulses) sum += p.duration;
  return sum;
}

LegalizationFailure::LegalizationFailure(const std::string& what, ComplexMatrix offending)
    : std::runtime_error(what + "\noffending factor:\n" + to_string(offending, 10)), offending_(std::move(offending)) {}

ComplexMatrix embed4(const ComplexMatrix& u3) {
  if (u3.dim() != kQutritLevels) throw DimensionMismatch("embed4: expected a 3x3 matrix");
  require_unitary(u3, "embed4");
  ComplexMatrix m = ComplexMatrix::identity(kIonLevels);
  for (std::size_t r = 0; r < kQutritLevels; ++r) {
    for (std::size_t c = 0; c < kQutritLevels; ++c) m(r, c) = u3(r, c);
  }
  return m;
}

std::vector<TwoLevelFactor> two_level_decompose(const ComplexMatrix& u) {
  require_unitary(u, "two_level_decompose");
  return column_sweep(u, [](Complex a, Complex b, bool last_row) -> std::optional<ComplexMatrix> {
    if (std::abs(b) <= kNegligible) {
      if (!last_row) return std::nullopt;
      // Pivot column is otherwise clear: only fix the pivot phase.
      return ComplexMatrix{{std::conj(a), 0.0}, {0.0, 1.0}};
    }
    const double n = std::hypot(std::abs(a), std::abs(b));
    return ComplexMatrix{{std::conj(a) / n, std::conj(b) / n}, {b / n, -a / n}};
  });
}

std::vector<TwoLevelFactor> special_unitary_decompose(const ComplexMatrix& u) {
  require_unitary(u, "special_unitary_decompose");
  return column_sweep(u, [](Complex a, Complex b, bool) -> std::optional<ComplexMatrix> {
    const double n = std::hypot(std::abs(a), std::abs(b));
    if (n <= kNegligible) return std::nullopt;
    return ComplexMatrix{{std::conj(a) / n, std::conj(b) / n}, {-b / n, a / n}};
  });
}

RotationPulse pulse_from_block(const ComplexMatrix& block, const LevelPair& pair, double rabi_frequency) {
  if (block.dim() != 2) throw DimensionMismatch("pulse_from_block: block must be 2x2");
  if (!(rabi_frequency > 0.0)) throw std::invalid_argument("pulse_from_block: Rabi frequency must be positive");
  if (!is_rotation_form(block, tol::kComposed)) {
    throw NotRepresentable("block on " + to_string(pair) + " is not of the form R(theta, phi):\n" + to_string(block, 10));
  }
  const double c = 0.5 * (block(0, 0).real() + block(1, 1).real());
  const double s = std::abs(block(0, 1));
  double theta = 2.0 * std::atan2(s, c);
  double phi = 0.0;
  if (s > kNegligible) {
    // -i s e^{-i phi} = b01  =>  e^{-i phi} = i b01 / s
    phi = wrap_phase(-std::arg(Complex{0.0, 1.0} * block(0, 1)));
  }
  if (theta <= kNegligible) {
    theta = 0.0;
    phi = 0.0;
  }
  return {pair, theta, phi, theta / rabi_frequency};
}

PulseSequence legalize(const std::vector<TwoLevelFactor>& factors, const CouplingGraph& graph, double rabi_frequency) {
  if (!(rabi_frequency > 0.0)) throw std::invalid_argument("legalize: Rabi frequency must be positive");
  ComplexMatrix target = ComplexMatrix::identity(kQutritLevels);
  Emitter emitter(graph, rabi_frequency);
  for (const auto& f : factors) {
    if (f.pair.hi >= kQutritLevels) throw InvalidDimension("legalize: factors must act on the qutrit levels");
    target = target * f.embedded(kQutritLevels);
    emitter.factor(f.block, f.pair, /*aux_free=*/true);
  }
  PulseSequence seq{emitter.take(), rabi_frequency, target};
  const ComplexMatrix built = reconstruct(seq);
  const double residual = max_abs_distance(built, embed4(target));
  if (residual > tol::kComposed) {
    std::ostringstream os;
    os << "legalized sequence misses the target by " << residual;
    throw LegalizationFailure(os.str(), built);
  }
  return seq;
}

ComplexMatrix reconstruct(const PulseSequence& seq) {
  ComplexMatrix m = ComplexMatrix::identity(kIonLevels);
  for (const auto& p : seq.pulses) m = m * p.embedded(kIonLevels);
  return m;
}

PulseSequence compile_unitary(const ComplexMatrix& u3, double rabi_frequency, const CouplingGraph& graph) {
  if (u3.dim() != kQutritLevels) throw DimensionMismatch("compile_unitary: expected a 3x3 matrix");
  require_unitary(u3, "compile_unitary");
  const Complex det = determinant3(u3);
  if (std::abs(det - 1.0) > tol::kComposed) {
    std::ostringstream os;
    os << "determinant " << det << " is not 1; products of R(theta, phi) pulses are special unitary";
    throw LegalizationFailure(os.str(), u3);
  }
  PulseSequence seq;
  try {
    seq = legalize(two_level_decompose(u3), graph, rabi_frequency);
  } catch (const LegalizationFailure&) {
    seq = legalize(special_unitary_decompose(u3), graph, rabi_frequency);
  }
  // Report against the requested matrix rather than the product of factors.
  const double residual = max_abs_distance(reconstruct(seq), embed4(u3));
  if (residual > tol::kComposed) {
    std::ostringstream os;
    os << "compiled sequence misses the target by " << residual;
    throw LegalizationFailure(os.str(), u3);
  }
  seq.target = u3;
  return seq;
}

PulseSequence compile_precession(double epsilon, double rabi_frequency) {
  return compile_unitary(spin1_precession(epsilon), rabi_frequency);
}

std::uint64_t target_checksum(const ComplexMatrix& target) {
  std::string dump;
  char buf[96];
  auto clean = [](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; };
  for (const auto& z : target.data()) {
    std::snprintf(buf, sizeof buf, "%.15e %.15e\n", clean(z.real()), clean(z.imag()));
    dump += buf;
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_pulse_file(std::ostream& out, const PulseSequence& seq) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# lgi-pulses v1 rabi_rad_per_s=%.17g target_fnv1a64=%016" PRIx64 " pulses=%zu\n",
                seq.rabi_frequency, target_checksum(seq.target), seq.pulses.size());
  out << buf;
  for (const auto& p : seq.pulses) {
    std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g %.17g\n", p.pair.lo, p.pair.hi, p.theta, p.phi, p.duration);
    out << buf;
  }
}

PulseFile read_pulse_file(std::istream& in) {
  PulseFile file;
  std::string line;
  bool header = false;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header) continue;
      std::istringstream hs(line.substr(1));
      std::string token;
      hs >> token;
      if (token != "lgi-pulses") throw std::runtime_error("pulse file: missing 'lgi-pulses' header");
      while (hs >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "rabi_rad_per_s") file.rabi_frequency = std::stod(value);
        if (key == "target_fnv1a64") file.checksum = std::stoull(value, nullptr, 16);
        if (key == "pulses") expected = std::stoull(value);
      }
      header = true;
      continue;
    }
    std::istringstream ls(line);
    RotationPulse p;
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (!(ls >> lo >> hi >> p.theta >> p.phi >> p.duration)) {
      throw std::runtime_error("pulse file: malformed line '" + line + "'");
    }
    p.pair = LevelPair::of(lo, hi);
    if (!CouplingGraph::trapped_ion().allows(p.pair)) {
      throw std::runtime_error("pulse file: pair " + to_string(p.pair) + " is not a laser-driven transition");
    }
    file.pulses.push_back(p);
  }
  if (!header) throw std::runtime_error("pulse file: missing header");
  if (file.pulses.size() != expected) throw std::runtime_error("pulse file: pulse count does not match header");
  return file;
}

ComplexMatrix read_matrix_file(std::istream& in) {
  std::vector<double> numbers;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw std::runtime_error("matrix file: bad number '" + token + "'");
      numbers.push_back(x);
    }
  }
  if (numbers.size() != 2 * kQutritLevels * kQutritLevels) {
    throw std::runtime_error("matrix file: expected 18 numbers (9 complex entries), got " +
                             std::to_string(numbers.size()));
  }
  ComplexMatrix m(kQutritLevels);
  for (std::size_t k = 0; k < kQutritLevels * kQutritLevels; ++k) {
    m(k / kQutritLevels, k % kQutritLevels) = Complex{numbers[2 * k], numbers[2 * k + 1]};
  }
  return m;
}

}  // namespace lgi
