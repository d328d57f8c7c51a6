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

#include "lgi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lgi/tolerance.hpp"

namespace lgi {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionMismatch(os.str());
  }
}

double off_diagonal_norm2(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (r != c) sum += std::norm(m(r, c));
    }
  }
  return sum;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionMismatch("ComplexMatrix: rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "mat_mul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(c, r) = std::conj(m(r, c));
  }
  return out;
}

Complex trace(const ComplexMatrix& m) {
  Complex sum{};
  for (std::size_t i = 0; i < m.dim(); ++i) sum += m(i, i);
  return sum;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  Complex sum{};
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t k = 0; k < a.dim(); ++k) sum += a(r, k) * b(k, r);
  }
  return sum;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_distance");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) sum += std::norm(a.data()[k] - b.data()[k]);
  return std::sqrt(sum);
}

double max_abs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_distance");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.all_finite() && max_abs_distance(m, dagger(m)) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.all_finite() && max_abs_distance(dagger(m) * m, ComplexMatrix::identity(m.dim())) <= tol;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  if (h.dim() == 0) throw InvalidDimension("hermitian_eigen: empty matrix");
  if (!is_hermitian(h, tol::kStructural)) {
    throw ContractViolation("hermitian_eigen: input is not Hermitian within 1e-12");
  }
  const std::size_t n = h.dim();
  // Symmetrize so rounding in the input cannot bias the sweep.
  ComplexMatrix a = (h + dagger(h)) * Complex{0.5};
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const auto& z : a.data()) scale += std::norm(z);
  const double threshold = std::max(scale, 1.0) * 1e-32;

  for (int sweep = 0; sweep < 64 && off_diagonal_norm2(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase_conj = std::conj(apq / g);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // Rotation J acting on columns p,q: J = diag(1, conj(phase)) * [[c, -s], [s, c]].
        const Complex jpp = c;
        const Complex jpq = -s;
        const Complex jqp = phase_conj * s;
        const Complex jqq = phase_conj * c;
        // a <- a * J
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        // a <- J^dagger * a
        for (std::size_t col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
          a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = vrp * jpp + vrq * jqp;
          v(r, q) = vrp * jpq + vrq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    Complex fix = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(v(r, src));
      if (mag > tol::kStructural) {
        fix = std::conj(v(r, src)) / mag;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, src) * fix;
  }
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale) {
  if (scale == 0.0) {
    if (!is_hermitian(h, tol::kStructural)) {
      throw ContractViolation("expm_hermitian: input is not Hermitian within 1e-12");
    }
    return ComplexMatrix::identity(h.dim());
  }
  const HermitianEigen eig = hermitian_eigen(h);
  const std::size_t n = h.dim();
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -scale * eig.values[k]);
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex sum{};
      for (std::size_t k = 0; k < n; ++k) sum += eig.vectors(r, k) * phases[k] * std::conj(eig.vectors(c, k));
      out(r, c) = sum;
    }
  }
  return out;
}

AngularMomentumOp jx(std::size_t dim) {
  if (dim < 2) throw InvalidDimension("jx: dimension must be at least 2");
  // Basis index k carries m = j - k; J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>.
  const double j = 0.5 * static_cast<double>(dim - 1);
  ComplexMatrix m(dim);
  for (std::size_t k = 1; k < dim; ++k) {
    const double mz = j - static_cast<double>(k);
    const double ladder = std::sqrt(j * (j + 1.0) - mz * (mz + 1.0));
    m(k - 1, k) = 0.5 * ladder;
    m(k, k - 1) = 0.5 * ladder;
  }
  return {dim, std::move(m)};
}

DensityOperator::DensityOperator(ComplexMatrix matrix, bool branch)
    : matrix_(std::move(matrix)), branch_(branch) {
  if (matrix_.dim() < 2) throw InvalidDimension("DensityOperator: dimension must be at least 2");
  if (!is_hermitian(matrix_, tol::kStructural)) {
    throw ContractViolation("DensityOperator: matrix is not Hermitian within 1e-12");
  }
  const Complex tr = trace(matrix_);
  if (!branch_ && std::abs(tr - 1.0) > tol::kStructural) {
    throw ContractViolation("DensityOperator: trace differs from 1 by more than 1e-12");
  }
  const HermitianEigen eig = hermitian_eigen(matrix_);
  if (eig.values.front() < -tol::kStructural) {
    throw ContractViolation("DensityOperator: matrix has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::basis_state(std::size_t dim, std::size_t k) {
  if (k >= dim) throw InvalidDimension("basis_state: index out of range");
  return DensityOperator(ComplexMatrix::unit(dim, k, k));
}

DensityOperator DensityOperator::pure(const std::vector<Complex>& psi) {
  ComplexMatrix m(psi.size());
  for (std::size_t r = 0; r < psi.size(); ++r) {
    for (std::size_t c = 0; c < psi.size(); ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  }
  return DensityOperator(std::move(m));
}

std::string to_string(const ComplexMatrix& m, int precision) {
  std::ostringstream os;
  os.precision(precision);
  for (std::size_t r = 0; r < m.dim(); ++r) {
    os << (r == 0 ? "[[" : " [");
    for (std::size_t c = 0; c < m.dim(); ++c) {
      os << m(r, c);
      if (c + 1 < m.dim()) os << ", ";
    }
    os << (r + 1 == m.dim() ? "]]" : "]\n");
  }
  return os.str();
}

}  // namespace lgi
