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
#include <utility>
#include <vector>

#include "entroflow/composite.hpp"
#include "entroflow/error.hpp"
#include "entroflow/state.hpp"

namespace entroflow {

/// Entries below this are treated as zero where a lemma demands positivity.
inline constexpr double kPositivityFloor = 1e-300;

class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) detail::fail(ErrorCode::LengthMismatch, "empty probability vector");
    double sum = 0.0;
    for (const auto w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        detail::fail(ErrorCode::NonPositiveProbability, "weight " + std::to_string(w));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance) {
      detail::fail(ErrorCode::NotNormalized, "weights sum to " + std::to_string(sum));
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Square nonnegative matrix with unit row and column sums (row-major).
class DoublyStochasticMatrix {
 public:
  DoublyStochasticMatrix(std::size_t size, std::vector<double> entries)
      : size_(size), entries_(std::move(entries)) {
    if (size == 0 || entries_.size() != size * size) {
      detail::fail(ErrorCode::SizeMismatch, "doubly stochastic matrix shape mismatch");
    }
    for (const auto t : entries_) {
      if (!(t >= 0.0) || !std::isfinite(t)) {
        detail::fail(ErrorCode::NotDoublyStochastic, "negative entry " + std::to_string(t));
      }
    }
    for (std::size_t i = 0; i < size; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (std::size_t j = 0; j < size; ++j) {
        row += (*this)(i, j);
        col += (*this)(j, i);
      }
      if (std::abs(row - 1.0) > kDistributionTolerance ||
          std::abs(col - 1.0) > kDistributionTolerance) {
        detail::fail(ErrorCode::NotDoublyStochastic,
                     "line " + std::to_string(i) + " sums to " + std::to_string(row) + "/" +
                         std::to_string(col));
      }
    }
  }

  static DoublyStochasticMatrix identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return {n, std::move(e)};
  }

  static DoublyStochasticMatrix uniform(std::size_t n) {
    return {n, std::vector<double>(n * n, 1.0 / static_cast<double>(n))};
  }

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }

 private:
  std::size_t size_;
  std::vector<double> entries_;
};

/// x ln x - (x - 1). Nonnegative, zero only at x = 1.
inline double xlnx_gap(double x) {
  if (!(x > 0.0)) detail::fail(ErrorCode::NonPositiveInput, "x must be positive");
  return x * std::log(x) - (x - 1.0);
}

/// sum x_i w_i ln w_i - wbar ln wbar with wbar = sum x_i w_i (>= 0).
inline double mixing_inequality_gap(const ProbabilityVector& x, std::span<const double> w) {
  if (x.size() != w.size()) detail::fail(ErrorCode::LengthMismatch, "x and w lengths differ");
  double mean = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0)) {
      detail::fail(ErrorCode::NonPositiveWeight, "w[" + std::to_string(i) + "] not positive");
    }
    mean += x[i] * w[i];
    rhs += x[i] * w[i] * std::log(w[i]);
  }
  return rhs - mean * std::log(mean);
}

struct ContractionResult {
  ProbabilityVector contracted;
  double gap;  // sum W ln W - sum W' ln W'
};

/// W'_j = sum_i W_i T_ij. A doubly stochastic map never raises sum W ln W.
inline ContractionResult contract_distribution(const ProbabilityVector& w,
                                               const DoublyStochasticMatrix& t) {
  if (w.size() != t.size()) detail::fail(ErrorCode::SizeMismatch, "W and T sizes differ");
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < kPositivityFloor) {
      detail::fail(ErrorCode::NonPositiveProbability,
                   "W[" + std::to_string(i) + "] is not strictly positive");
    }
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += w[i] * t(i, j);

  double before = 0.0;
  double after = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    before += w[i] * std::log(w[i]);
    after += out[i] * std::log(out[i]);
  }
  return {ProbabilityVector(std::move(out)), before - after};
}

struct SubadditivityResult {
  ProbabilityVector rows;  // W_i = sum_j W_ij
  ProbabilityVector cols;  // W'_j = sum_i W_ij
  double gap;              // sum W_ij ln W_ij - sum W_i ln W_i - sum W'_j ln W'_j
};

/// Classical subadditivity of sum W ln W; the gap is the mutual information
/// of the table and vanishes exactly when W_ij = W_i W'_j.
inline SubadditivityResult joint_subadditivity_gap(const JointDistribution& w) {
  for (const auto x : w.weights()) {
    if (x < kPositivityFloor) {
      detail::fail(ErrorCode::NonPositiveEntry, "joint table has a non-positive entry");
    }
  }
  ProbabilityVector rows(w.row_marginal());
  ProbabilityVector cols(w.col_marginal());
  double gap = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      // Term-wise form W_ij ln(W_ij / (W_i W'_j)) avoids cancellation between
      // three large sums.
      const double x = w(i, j);
      gap += x * std::log(x / (rows[i] * cols[j]));
    }
  return {std::move(rows), std::move(cols), gap};
}

/// T_nm = |U_nm|^2 is doubly stochastic for any unitary U.
inline DoublyStochasticMatrix unistochastic_from_unitary(const Unitary& u) {
  const std::size_t n = u.dim();
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = std::norm(u.matrix()(i, j));
  return {n, std::move(e)};
}

}  // namespace entroflow
