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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgi/linalg.hpp"
#include "lgi/tolerance.hpp"
#include "support.hpp"

using namespace lgi;
using lgi::testing::eigen_expm;
using lgi::testing::random_hermitian;
using lgi::testing::to_eigen;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("jx builds the spin-1 and spin-1/2 matrices") {
  const ComplexMatrix expected3 = ComplexMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}} * Complex{kInvSqrt2};
  CHECK(max_abs_distance(jx(3).matrix, expected3) < tol::kStructural);
  const ComplexMatrix expected2{{0, 0.5}, {0.5, 0}};
  CHECK(max_abs_distance(jx(2).matrix, expected2) < tol::kStructural);
  CHECK_THROWS_AS(jx(1), InvalidDimension);
  CHECK_THROWS_AS(jx(0), InvalidDimension);
}

TEST_CASE("jx is real symmetric with spectrum -j..j") {
  for (std::size_t dim = 2; dim <= 7; ++dim) {
    const auto op = jx(dim);
    CHECK(op.dim == dim);
    for (std::size_t r = 0; r < dim; ++r) {
      CHECK(op.matrix(r, r) == Complex{});
      for (std::size_t c = 0; c < dim; ++c) {
        CHECK(op.matrix(r, c).imag() == 0.0);
        CHECK(op.matrix(r, c) == op.matrix(c, r));
      }
    }
    const auto eig = hermitian_eigen(op.matrix);
    const double j = 0.5 * static_cast<double>(dim - 1);
    for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(eig.values[k] - (-j + static_cast<double>(k))) < tol::kStructural);
  }
}

TEST_CASE("matrix algebra basics") {
  CHECK(trace(ComplexMatrix::identity(3)) == Complex{3.0});
  std::mt19937_64 rng(11);
  const ComplexMatrix a = random_hermitian(3, rng) + Complex{0, 1} * random_hermitian(3, rng);
  const ComplexMatrix b = random_hermitian(3, rng);
  CHECK(max_abs_distance(dagger(dagger(a)), a) == 0.0);
  CHECK(std::abs(trace_of_product(a, b) - trace(a * b)) < 1e-12);
  const lgi::testing::EMatrix ref = to_eigen(a) * to_eigen(b);
  CHECK(max_abs_distance(mat_mul(a, b), lgi::testing::from_eigen(ref)) < 1e-12);
  CHECK(frobenius_distance(a, a) == 0.0);
  CHECK_THROWS_AS(mat_mul(ComplexMatrix::identity(3), ComplexMatrix::identity(4)), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix::identity(3) + ComplexMatrix::identity(2), DimensionMismatch);
}

TEST_CASE("hermitian_eigen agrees with Eigen and follows the ordering convention") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 3 + static_cast<std::size_t>(trial % 2);
    const ComplexMatrix h = random_hermitian(dim, rng);
    const auto eig = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<lgi::testing::EMatrix> ref(to_eigen(h));
    REQUIRE(eig.values.size() == dim);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    for (std::size_t k = 0; k < dim; ++k) {
      CHECK(std::abs(eig.values[k] - ref.eigenvalues()(k)) < 1e-12);
      // First nonzero component positive real.
      for (std::size_t r = 0; r < dim; ++r) {
        const Complex v = eig.vectors(r, k);
        if (std::abs(v) > 1e-12) {
          CHECK(v.real() > 0.0);
          CHECK(std::abs(v.imag()) < 1e-12);
          break;
        }
      }
    }
    // H V = V diag(lambda)
    const ComplexMatrix hv = h * eig.vectors;
    ComplexMatrix vl = eig.vectors;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) vl(r, c) *= eig.values[c];
    }
    CHECK(max_abs_distance(hv, vl) < 1e-11);
    CHECK(is_unitary(eig.vectors, 1e-12));
  }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(hermitian_eigen(m), ContractViolation);
  CHECK_THROWS_AS(expm_hermitian(m, 1.0), ContractViolation);
}

TEST_CASE("expm_hermitian matches the eigen-solver oracle and the known spin-1 values") {
  const ComplexMatrix j = jx(3).matrix;
  CHECK(max_abs_distance(expm_hermitian(j, 0.0), ComplexMatrix::identity(3)) == 0.0);

  const ComplexMatrix flip{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}};
  CHECK(max_abs_distance(expm_hermitian(j, std::numbers::pi), flip) < tol::kStructural);

  for (double eps : {0.3, 1.0, 2.2, 4.0, 5.9}) {
    const double c = std::cos(eps);
    const Complex s{0.0, -std::sin(eps) * kInvSqrt2};
    const ComplexMatrix a2{{0.5 + 0.5 * c, s, -0.5 + 0.5 * c}, {s, c, s}, {-0.5 + 0.5 * c, s, 0.5 + 0.5 * c}};
    CHECK(max_abs_distance(expm_hermitian(j, eps), a2) < tol::kStructural);
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix h = random_hermitian(3 + static_cast<std::size_t>(trial % 2), rng);
    const double s = scale(rng);
    const ComplexMatrix u = expm_hermitian(h, s);
    CHECK(is_unitary(u, tol::kStructural));
    CHECK(frobenius_distance(u, eigen_expm(h, s)) < 1e-11);
  }
}

TEST_CASE("property: expm semigroup and adjoint") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> t(-6.0, 6.0);
  for (int trial = 0; trial < 300; ++trial) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const double s = t(rng);
    const double u = t(rng);
    CHECK(max_abs_distance(expm_hermitian(h, s) * expm_hermitian(h, u), expm_hermitian(h, s + u)) < tol::kComposed);
    CHECK(max_abs_distance(dagger(expm_hermitian(h, s)), expm_hermitian(h, -s)) < tol::kStructural);
  }
}

TEST_CASE("DensityOperator validates its invariants") {
  CHECK_NOTHROW(DensityOperator::basis_state(3, 0));
  const auto rho = DensityOperator::pure({Complex{0}, Complex{kInvSqrt2}, Complex{kInvSqrt2}});
  CHECK(std::abs(rho.trace_value() - 1.0) < 1e-15);
  CHECK(std::abs(rho.matrix()(1, 2) - 0.5) < 1e-15);

  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::identity(3)), ContractViolation);       // trace 3
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::diagonal({1.5, -0.5, 0})), ContractViolation);  // not PSD
  ComplexMatrix skew = ComplexMatrix::diagonal({0.5, 0.5, 0});
  skew(0, 1) = Complex{0, 0.1};
  CHECK_THROWS_AS(DensityOperator{skew}, ContractViolation);                     // not Hermitian
  CHECK_NOTHROW(DensityOperator(ComplexMatrix::diagonal({0.25, 0, 0}), true));   // branch, trace 1/4
  CHECK_THROWS_AS(DensityOperator::pure({Complex{1}, Complex{1}}), ContractViolation);
}

TEST_CASE("ComplexMatrix reports non-finite entries and rejects ragged rows") {
  ComplexMatrix m = ComplexMatrix::identity(3);
  CHECK(m.all_finite());
  m(1, 1) = std::nan("");
  CHECK_FALSE(m.all_finite());
  CHECK_THROWS_AS(ComplexMatrix({{1, 0}, {0}}), DimensionMismatch);
}
