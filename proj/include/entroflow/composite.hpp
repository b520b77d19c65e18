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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "entroflow/error.hpp"
#include "entroflow/linalg.hpp"
#include "entroflow/state.hpp"

namespace entroflow {

/// Ordered part dimensions of a composite Hilbert space. Basis states are
/// flattened big-endian: part 0 is the most significant digit.
class Partition {
 public:
  explicit Partition(std::vector<std::size_t> dims, std::size_t cap = kDefaultDimensionCap)
      : dims_(std::move(dims)) {
    if (dims_.empty()) detail::fail(ErrorCode::InvalidPartition, "partition has no parts");
    total_ = 1;
    for (const auto d : dims_) {
      if (d < 2) {
        detail::fail(ErrorCode::InvalidPartition,
                     "part dimension " + std::to_string(d) + " is below 2");
      }
      if (total_ > cap / d) {
        detail::fail(ErrorCode::DimensionOverflow,
                     "partition total exceeds cap " + std::to_string(cap));
      }
      total_ *= d;
    }
    strides_.assign(dims_.size(), 1);
    for (std::size_t i = dims_.size() - 1; i > 0; --i) strides_[i - 1] = strides_[i] * dims_[i];
  }

  std::size_t parts() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t dim(std::size_t part) const { return dims_.at(part); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t stride(std::size_t part) const { return strides_.at(part); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// n = sum_i n_i * prod_{j>i} d_j.
inline std::size_t composite_index(const Partition& p, std::span<const std::size_t> part_indices) {
  if (part_indices.size() != p.parts()) {
    detail::fail(ErrorCode::IndexOutOfRange, "expected one index per part");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.parts(); ++i) {
    if (part_indices[i] >= p.dim(i)) {
      detail::fail(ErrorCode::IndexOutOfRange,
                   "index " + std::to_string(part_indices[i]) + " out of range for part " +
                       std::to_string(i));
    }
    n += part_indices[i] * p.stride(i);
  }
  return n;
}

inline std::vector<std::size_t> decompose_index(const Partition& p, std::size_t n) {
  if (n >= p.total()) detail::fail(ErrorCode::IndexOutOfRange, "composite index out of range");
  std::vector<std::size_t> out(p.parts());
  for (std::size_t i = 0; i < p.parts(); ++i) {
    out[i] = n / p.stride(i);
    n %= p.stride(i);
  }
  return out;
}

inline DensityOperator tensor_product_state(std::span<const DensityOperator> factors,
                                            std::size_t cap = kDefaultDimensionCap) {
  if (factors.empty()) detail::fail(ErrorCode::ShapeMismatch, "no factors given");
  ComplexMatrix acc = factors.front().matrix();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i].matrix(), cap);
  return validate_density(acc);
}

inline DensityOperator tensor_product_state(std::initializer_list<DensityOperator> factors) {
  return tensor_product_state(std::span<const DensityOperator>(factors.begin(), factors.size()));
}

namespace detail {

inline void require_dim(const DensityOperator& rho, const Partition& p) {
  if (rho.dim() != p.total()) {
    fail(ErrorCode::PartitionMismatch, "operator dimension " + std::to_string(rho.dim()) +
                                           " differs from partition total " +
                                           std::to_string(p.total()));
  }
}

/// For the given subset of parts, the full-space offset contributed by every
/// local multi-index of that subset, enumerated big-endian.
inline std::vector<std::size_t> subset_offsets(const Partition& p,
                                               std::span<const std::size_t> parts) {
  std::vector<std::size_t> offsets{0};
  for (const auto part : parts) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * p.dim(part));
    for (const auto base : offsets)
      for (std::size_t k = 0; k < p.dim(part); ++k) next.push_back(base + k * p.stride(part));
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace detail

/// Reduced operator on the kept parts (in their original order), summing
/// over matrix elements diagonal in the traced parts.
inline DensityOperator partial_trace(const DensityOperator& rho, const Partition& p,
                                     std::span<const std::size_t> keep) {
  detail::require_dim(rho, p);
  if (keep.empty()) detail::fail(ErrorCode::EmptyKeepSet, "keep set is empty");
  std::vector<bool> kept(p.parts(), false);
  for (const auto k : keep) {
    if (k >= p.parts()) detail::fail(ErrorCode::PartitionMismatch, "keep index out of range");
    kept[k] = true;
  }
  std::vector<std::size_t> keep_parts;
  std::vector<std::size_t> trace_parts;
  for (std::size_t i = 0; i < p.parts(); ++i) (kept[i] ? keep_parts : trace_parts).push_back(i);
  if (trace_parts.empty()) return rho;

  const auto keep_off = detail::subset_offsets(p, keep_parts);
  const auto trace_off = detail::subset_offsets(p, trace_parts);
  const std::size_t n = keep_off.size();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (const auto t : trace_off) s += m(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = s;
    }
  return validate_density(out);
}

inline DensityOperator partial_trace(const DensityOperator& rho, const Partition& p,
                                     std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, p, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// The single-part reduced operators rho_i = Tr_{not i} rho.
inline std::vector<DensityOperator> marginals(const DensityOperator& rho, const Partition& p) {
  detail::require_dim(rho, p);
  std::vector<DensityOperator> out;
  out.reserve(p.parts());
  for (std::size_t i = 0; i < p.parts(); ++i) out.push_back(partial_trace(rho, p, {i}));
  return out;
}

/// Nonselective part-wise measurement: rho -> rho_0 (x) rho_1 (x) ...
/// Marginals survive exactly; inter-part correlations are discarded.
inline DensityOperator collapse_to_product(const DensityOperator& rho, const Partition& p) {
  const auto parts = marginals(rho, p);
  ComplexMatrix acc = parts.front().matrix();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = kron(acc, parts[i].matrix());
  acc *= 1.0 / acc.trace().real();
  return validate_density(acc);
}

inline constexpr double kDistributionTolerance = 1e-10;

/// Nonnegative d_a x d_b table of joint probabilities summing to one.
class JointDistribution {
 public:
  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> weights)
      : rows_(rows), cols_(cols), weights_(std::move(weights)) {
    if (rows == 0 || cols == 0 || weights_.size() != rows * cols) {
      detail::fail(ErrorCode::ShapeMismatch, "joint distribution shape mismatch");
    }
    double sum = 0.0;
    for (const auto w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        detail::fail(ErrorCode::NonPositiveEntry, "joint weight " + std::to_string(w));
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance) {
      detail::fail(ErrorCode::NotNormalized, "joint weights sum to " + std::to_string(sum));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return weights_[i * cols_ + j]; }
  std::span<const double> weights() const noexcept { return weights_; }

  std::vector<double> row_marginal() const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
    return out;
  }

  std::vector<double> col_marginal() const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[j] += (*this)(i, j);
    return out;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> weights_;
};

/// W[n_a, n_b] = <n_a n_b| rho |n_a n_b>, the product-basis occupation table.
inline JointDistribution joint_diagonal_distribution(const DensityOperator& rho,
                                                     const Partition& p) {
  if (p.parts() != 2) detail::fail(ErrorCode::NotBipartite, "partition must have two parts");
  detail::require_dim(rho, p);
  const std::size_t da = p.dim(0);
  const std::size_t db = p.dim(1);
  std::vector<double> w(da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) {
      const std::size_t n = a * p.stride(0) + b;
      w[a * db + b] = std::max(rho.matrix()(n, n).real(), 0.0);
    }
  return JointDistribution(da, db, std::move(w));
}

}  // namespace entroflow
