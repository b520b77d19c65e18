// Copyright 2026 The entroflow Authors
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

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "entroflow/error.hpp"
#include "entroflow/linalg.hpp"
#include "entroflow/rng.hpp"

namespace entroflow {

inline constexpr double kTraceTolerance = 1e-9;
/// Eigenvalues in [-kNegativeEigenvalueTolerance, 0) are round-off and read
/// as zero downstream; anything below is a hard error.
inline constexpr double kNegativeEigenvalueTolerance = 1e-9;
inline constexpr double kUnitaryTolerance = 1e-10;

class DensityOperator;
DensityOperator validate_density(const ComplexMatrix& m);

/// Hermitian, positive semidefinite, unit-trace matrix. Only obtainable
/// through validate_density (directly or via the library's constructors),
/// so holding one means the invariants were checked.
class DensityOperator {
 public:
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// Eigenvalues with round-off negatives clamped to zero, descending.
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

  friend bool operator==(const DensityOperator& a, const DensityOperator& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  DensityOperator(ComplexMatrix m, std::vector<double> spectrum)
      : matrix_(std::move(m)), spectrum_(std::move(spectrum)) {}
  friend DensityOperator validate_density(const ComplexMatrix& m);

  ComplexMatrix matrix_;
  std::vector<double> spectrum_;
};

/// Checks Hermiticity, unit trace and positivity. The returned operator holds
/// the symmetrized matrix with its trace renormalized to exactly 1.
inline DensityOperator validate_density(const ComplexMatrix& m) {
  if (!m.square()) detail::fail(ErrorCode::NotHermitian, "density matrix must be square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    detail::fail(ErrorCode::NotHermitian,
                 "relative Hermiticity defect " + std::to_string(defect));
  }
  ComplexMatrix h = hermitian_part(m);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    detail::fail(ErrorCode::NotUnitTrace, "trace is " + std::to_string(tr));
  }
  h *= 1.0 / tr;

  auto eig = hermitian_eig(h);
  if (eig.eigenvalues.back() < -kNegativeEigenvalueTolerance) {
    detail::fail(ErrorCode::NotPositive,
                 "smallest eigenvalue " + std::to_string(eig.eigenvalues.back()));
  }
  for (auto& w : eig.eigenvalues) w = std::max(w, 0.0);
  return DensityOperator(std::move(h), std::move(eig.eigenvalues));
}

/// Matrix with U^dagger U = I to within kUnitaryTolerance.
class Unitary {
 public:
  explicit Unitary(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.square()) detail::fail(ErrorCode::NotUnitary, "unitary must be square");
    const double dev = frobenius_distance(matrix_.adjoint() * matrix_,
                                          ComplexMatrix::identity(matrix_.rows()));
    if (dev > kUnitaryTolerance) {
      detail::fail(ErrorCode::NotUnitary, "||U^dagger U - I||_F = " + std::to_string(dev));
    }
  }

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// U rho U^dagger.
  ComplexMatrix conjugate(const ComplexMatrix& rho) const {
    return matrix_ * rho * matrix_.adjoint();
  }

 private:
  ComplexMatrix matrix_;
};

/// |v><v| / <v|v>.
inline DensityOperator pure_state_density(std::span<const Complex> v) {
  if (v.empty()) detail::fail(ErrorCode::ZeroVector, "empty state vector");
  double norm2 = 0.0;
  for (const auto& z : v) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    detail::fail(ErrorCode::ZeroVector, "state vector has zero norm");
  }
  const std::size_t n = v.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r] * std::conj(v[c]) / norm2;
  return validate_density(m);
}

/// rows x cols matrix of complex Gaussians, real and imaginary parts each
/// N(0, 1/2).
inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, GaussianSource& gauss) {
  ComplexMatrix g(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  for (auto& z : g.data()) {
    const double re = gauss();
    const double im = gauss();
    z = Complex(re * scale, im * scale);
  }
  return g;
}

/// Haar-distributed unitary: Ginibre matrix orthonormalized column by column
/// (Gram-Schmidt, two passes). Gram-Schmidt yields the QR factor with a
/// positive real diagonal in R, which is the phase fix that makes Q Haar.
inline Unitary haar_unitary(std::size_t dim, RngSeed seed) {
  if (dim == 0) detail::fail(ErrorCode::ShapeMismatch, "dimension must be positive");
  GaussianSource gauss(seed);
  ComplexMatrix q = ginibre(dim, dim, gauss);
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += std::conj(q(r, k)) * q(r, j);
        for (std::size_t r = 0; r < dim; ++r) q(r, j) -= proj * q(r, k);
      }
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm2 += std::norm(q(r, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < dim; ++r) q(r, j) *= inv;
  }
  return Unitary(std::move(q));
}

/// G G^dagger / Tr(G G^dagger) with G a dim x rank Ginibre matrix.
inline DensityOperator random_density(std::size_t dim, std::size_t rank, RngSeed seed) {
  if (rank < 1 || rank > dim) {
    detail::fail(ErrorCode::RankOutOfRange,
                 "rank " + std::to_string(rank) + " not in [1, " + std::to_string(dim) + "]");
  }
  GaussianSource gauss(seed);
  const ComplexMatrix g = ginibre(dim, rank, gauss);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return validate_density(rho);
}

/// Random pure state from a normalized complex Gaussian vector.
inline DensityOperator random_pure_density(std::size_t dim, RngSeed seed) {
  return random_density(dim, 1, seed);
}

}  // namespace entroflow
