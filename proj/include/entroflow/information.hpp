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
#include <vector>

#include "entroflow/composite.hpp"
#include "entroflow/error.hpp"
#include "entroflow/linalg.hpp"
#include "entroflow/state.hpp"

namespace entroflow {

/// Weights at or below this floor contribute nothing to sum W ln W.
inline constexpr double kEigenvalueFloor = 1e-12;

/// sum_k w_k ln w_k with the 0 ln 0 = 0 extension.
inline double sum_xlnx(std::span<const double> weights) {
  double s = 0.0;
  for (const auto w : weights)
    if (w > kEigenvalueFloor) s += w * std::log(w);
  return s;
}

/// I = Tr rho ln rho in nats. Nonpositive; zero exactly for pure states.
inline double information(const DensityOperator& rho) { return sum_xlnx(rho.spectrum()); }

/// von Neumann entropy -Tr rho ln rho (nats).
inline double von_neumann_entropy(const DensityOperator& rho) { return -information(rho); }

struct EntropyReport {
  std::vector<double> per_part;  // S_i, units of k_B nats
  double total = 0.0;            // sum_i S_i
  double k_B = 1.0;
  double information_sum = 0.0;  // sum_i Tr rho_i ln rho_i
};

/// S = sum_i S_i with S_i = -k_B Tr rho_i ln rho_i over single-part marginals.
inline EntropyReport entropy_of_partition(const DensityOperator& rho, const Partition& p,
                                          double k_B = 1.0) {
  if (!(k_B > 0.0)) detail::fail(ErrorCode::NonPositiveInput, "k_B must be positive");
  detail::require_dim(rho, p);
  EntropyReport report;
  report.k_B = k_B;
  for (const auto& m : marginals(rho, p)) {
    const double info = information(m);
    report.information_sum += info;
    report.per_part.push_back(-k_B * info);
  }
  report.total = -k_B * report.information_sum;
  return report;
}

/// Orthonormal columns |m> spanning the space; the eigenbasis of a complete
/// set of commuting observables.
class ObservableBasis {
 public:
  explicit ObservableBasis(ComplexMatrix vectors) : vectors_(std::move(vectors)) {
    if (!vectors_.square()) detail::fail(ErrorCode::DimensionMismatch, "basis must be square");
    const double dev = frobenius_distance(vectors_.adjoint() * vectors_,
                                          ComplexMatrix::identity(vectors_.rows()));
    if (dev > kUnitaryTolerance) {
      detail::fail(ErrorCode::NotUnitary, "basis columns are not orthonormal");
    }
  }

  explicit ObservableBasis(const Unitary& u) : ObservableBasis(u.matrix()) {}

  static ObservableBasis computational(std::size_t dim) {
    return ObservableBasis(ComplexMatrix::identity(dim));
  }

  static ObservableBasis eigenbasis(const DensityOperator& rho) {
    return ObservableBasis(hermitian_eig(rho.matrix()).eigenvectors);
  }

  std::size_t dim() const noexcept { return vectors_.rows(); }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }

 private:
  ComplexMatrix vectors_;
};

/// Occupation probabilities W'_m = <m|rho|m>.
inline std::vector<double> basis_probabilities(const DensityOperator& rho,
                                               const ObservableBasis& basis) {
  if (basis.dim() != rho.dim()) {
    detail::fail(ErrorCode::DimensionMismatch, "basis and operator dimensions differ");
  }
  const std::size_t n = rho.dim();
  const auto& m = rho.matrix();
  const auto& v = basis.vectors();
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      Complex row = 0.0;
      for (std::size_t c = 0; c < n; ++c) row += m(r, c) * v(c, k);
      s += std::conj(v(r, k)) * row;
    }
    double p = s.real();
    if (p < 0.0 && p >= -1e-12) p = 0.0;
    w[k] = p;
  }
  return w;
}

/// I_[L] = sum_m W'_m ln W'_m. Never exceeds information(rho).
inline double basis_information(const DensityOperator& rho, const ObservableBasis& basis) {
  return sum_xlnx(basis_probabilities(rho, basis));
}

/// I - sum_i I_i: information held only in correlations between parts.
inline double correlation_information(const DensityOperator& rho, const Partition& p) {
  detail::require_dim(rho, p);
  if (p.parts() < 2) detail::fail(ErrorCode::PartitionMismatch, "need at least two parts");
  double parts_sum = 0.0;
  for (const auto& m : marginals(rho, p)) parts_sum += information(m);
  return information(rho) - parts_sum;
}

}  // namespace entroflow
