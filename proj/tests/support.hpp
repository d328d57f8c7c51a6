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

// Helpers shared by the test binaries. Eigen appears only here and in test
// code, as an independent reference for the library's own linear algebra.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lgi/linalg.hpp"
#include "lgi/measurement.hpp"

namespace lgi::testing {

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const ComplexMatrix& m) {
  EMatrix out(m.dim(), m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

inline ComplexMatrix from_eigen(const EMatrix& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

/// exp(-i s H) through Eigen's self-adjoint solver.
inline ComplexMatrix eigen_expm(const ComplexMatrix& h, double s) {
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(to_eigen(h));
  const Eigen::VectorXd lambda = solver.eigenvalues();
  Eigen::VectorXcd phase(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phase(k) = std::exp(Complex(0.0, -s * lambda(k)));
  const EMatrix v = solver.eigenvectors();
  return from_eigen(v * phase.asDiagonal() * v.adjoint());
}

inline Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix h(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    h(r, r) = gaussian_complex(rng).real();
    for (std::size_t c = r + 1; c < dim; ++c) {
      h(r, c) = gaussian_complex(rng);
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

/// Haar unitary from the QR of a Ginibre matrix (Eigen), phases fixed.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  EMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = gaussian_complex(rng);
  }
  Eigen::HouseholderQR<EMatrix> qr(g);
  EMatrix q = qr.householderQ();
  const EMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < dim; ++k) {
    const Complex d = rmat(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return from_eigen(q);
}

/// Random unitary rescaled by a phase so that det = 1.
inline ComplexMatrix random_special_unitary(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix u = random_unitary(dim, rng);
  const Complex det = to_eigen(u).determinant();
  u *= std::pow(det, -1.0 / static_cast<double>(dim));
  return u;
}

/// Mixed state A A^+ / Tr, A Ginibre.
inline DensityOperator random_density(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix a(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = gaussian_complex(rng);
  }
  ComplexMatrix rho = a * dagger(a);
  rho *= 1.0 / trace(rho).real();
  for (std::size_t k = 0; k < dim; ++k) rho(k, k) = rho(k, k).real();
  return DensityOperator(rho);
}

}  // namespace lgi::testing
