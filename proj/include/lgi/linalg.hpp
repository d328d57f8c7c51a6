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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgi {

using Complex = std::complex<double>;

class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's documented precondition on its numeric input
/// (hermiticity, unitarity, normalization) does not hold.
class ContractViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense square complex matrix, row-major. Sized for the handful of levels a
/// single trapped ion exposes; nothing here is tuned for large dimensions.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(const std::vector<Complex>& entries);
  /// |i><j|
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  bool all_finite() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);
/// Tr(a*b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |a_ij - b_ij|
double max_abs_distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Eigen-pairs of a Hermitian matrix, ascending eigenvalues. Column k of
/// `vectors` belongs to `values[k]` and has its first nonzero component
/// real and positive.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Throws ContractViolation if `h` is not Hermitian.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// exp(-i * scale * h) for Hermitian h, built from its eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale);

/// Spin-j angular momentum x component for dim = 2j + 1 levels (hbar = 1).
struct AngularMomentumOp {
  std::size_t dim = 0;
  ComplexMatrix matrix;
};

/// Built from the ladder operators: real symmetric with zero diagonal, and
/// eigenvalues -j..+j. Throws InvalidDimension for dim < 2.
AngularMomentumOp jx(std::size_t dim);

/// Hermitian, PSD matrix with unit trace. Post-measurement branches are
/// carried unnormalized and flagged; their trace is the branch probability.
class DensityOperator {
 public:
  /// Validates hermiticity, PSD and (unless `branch`) unit trace.
  explicit DensityOperator(ComplexMatrix matrix, bool branch = false);

  /// |k><k| on `dim` levels.
  static DensityOperator basis_state(std::size_t dim, std::size_t k);
  /// |psi><psi| for a normalized state vector.
  static DensityOperator pure(const std::vector<Complex>& psi);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  bool is_branch() const { return branch_; }
  double trace_value() const { return trace(matrix_).real(); }

 private:
  ComplexMatrix matrix_;
  bool branch_ = false;
};

std::string to_string(const ComplexMatrix& m, int precision = 6);

}  // namespace lgi
