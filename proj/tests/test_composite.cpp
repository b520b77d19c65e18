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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "entroflow/audit.hpp"
#include "entroflow/composite.hpp"
#include "test_helpers.hpp"

namespace entroflow {
namespace {

DensityOperator bell_state() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> v{s, 0.0, 0.0, s};
  return pure_state_density(v);
}

DensityOperator maximally_mixed(std::size_t n) {
  return validate_density(ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
}

TEST(Partition, TotalsAndValidation) {
  const Partition p({2, 3, 4});
  EXPECT_EQ(p.total(), 24u);
  EXPECT_EQ(p.stride(0), 12u);
  EXPECT_EQ(p.stride(2), 1u);
  EXPECT_THROW(Partition({2, 1}), Error);
  EXPECT_THROW(Partition(std::vector<std::size_t>{}), Error);
  EXPECT_THROW(Partition({64, 64, 2}), Error);
}

TEST(CompositeIndex, BigEndianConvention) {
  const std::vector<std::size_t> i00{0, 0}, i10{1, 0}, i12{1, 2};
  EXPECT_EQ(composite_index(Partition({2, 2}), i00), 0u);
  EXPECT_EQ(composite_index(Partition({2, 2}), i10), 2u);
  EXPECT_EQ(composite_index(Partition({2, 3}), i12), 5u);
  const std::vector<std::size_t> bad{2, 0};
  EXPECT_THROW(composite_index(Partition({2, 2}), bad), Error);
}

TEST(CompositeIndex, BijectiveWithDecomposition) {
  for (const auto& dims : audit::partitions_up_to(36)) {
    const Partition p(dims);
    for (std::size_t n = 0; n < p.total(); ++n) {
      EXPECT_EQ(composite_index(p, decompose_index(p, n)), n);
    }
  }
}

TEST(TensorProductState, SingleFactorAndMixedPair) {
  const auto rho = random_density(3, 2, {1, 0});
  const std::vector<DensityOperator> one{rho};
  EXPECT_LE(frobenius_distance(tensor_product_state(one).matrix(), rho.matrix()), 1e-15);
  const auto mm = tensor_product_state({maximally_mixed(2), maximally_mixed(2)});
  EXPECT_LE(frobenius_distance(mm.matrix(), maximally_mixed(4).matrix()), 1e-15);
}

TEST(TensorProductState, TraceIsProductOfTraces) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = random_density(2, 2, {s, 1});
    const auto b = random_density(3, 2, {s, 2});
    const auto c = random_density(2, 1, {s, 3});
    const auto t = kron(kron(a.matrix(), b.matrix()), c.matrix());
    EXPECT_NEAR(t.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(tensor_product_state({a, b, c}).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const auto r = partial_trace(bell_state(), Partition({2, 2}), {0});
  EXPECT_LE(frobenius_distance(r.matrix(), maximally_mixed(2).matrix()), 1e-15);
}

TEST(PartialTrace, RecoversProductFactor) {
  const auto a = random_density(2, 2, {3, 0});
  const auto b = random_density(3, 3, {4, 0});
  const Partition p({2, 3});
  const auto ab = tensor_product_state({a, b});
  EXPECT_LE(testing::max_abs_diff(partial_trace(ab, p, {0}).matrix(), a.matrix()), 1e-12);
  EXPECT_LE(testing::max_abs_diff(partial_trace(ab, p, {1}).matrix(), b.matrix()), 1e-12);
}

TEST(PartialTrace, MatchesQuadrupleLoopOn2x3) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(6, 1 + s % 6, {s, 5});
    const Partition p({2, 3});
    EXPECT_LE(testing::max_abs_diff(partial_trace(rho, p, {1}).matrix(),
                                    testing::naive_trace_a(rho.matrix(), 2, 3)),
              1e-12);
    EXPECT_LE(testing::max_abs_diff(partial_trace(rho, p, {0}).matrix(),
                                    testing::naive_trace_b(rho.matrix(), 2, 3)),
              1e-12);
  }
}

TEST(PartialTrace, MatchesNaiveOracleForAllPartitionsUpTo36) {
  std::uint64_t seed = 0;
  for (const auto& dims : audit::partitions_up_to(36)) {
    const Partition p(dims);
    const auto rho = random_density(p.total(), p.total(), {seed++, 6});
    // Every nonempty keep subset.
    for (std::size_t mask = 1; mask < (std::size_t{1} << dims.size()); ++mask) {
      std::vector<bool> keep(dims.size());
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < dims.size(); ++i)
        if ((keep[i] = (mask >> i) & 1)) idx.push_back(i);
      const auto fast = partial_trace(rho, p, idx);
      const auto slow = audit::reference_partial_trace(rho.matrix(), dims, keep);
      EXPECT_LE(testing::max_abs_diff(fast.matrix(), slow), 1e-12);
      EXPECT_NEAR(fast.matrix().trace().real(), 1.0, 1e-10);
    }
  }
}

TEST(PartialTrace, KeepAllReturnsInput) {
  const auto rho = random_density(4, 4, {1, 1});
  const auto same = partial_trace(rho, Partition({2, 2}), {0, 1});
  EXPECT_EQ(same.matrix(), rho.matrix());
}

TEST(PartialTrace, Errors) {
  const auto rho = random_density(4, 4, {1, 1});
  try {
    partial_trace(rho, Partition({2, 3}), {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PartitionMismatch);
  }
  try {
    partial_trace(rho, Partition({2, 2}), std::span<const std::size_t>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyKeepSet);
  }
}

TEST(CollapseToProduct, ProductStateIsFixed) {
  const auto ab = tensor_product_state({random_density(2, 2, {1, 0}), random_density(3, 2, {2, 0})});
  EXPECT_LE(testing::max_abs_diff(collapse_to_product(ab, Partition({2, 3})).matrix(), ab.matrix()),
            1e-12);
}

TEST(CollapseToProduct, BellBecomesMaximallyMixed) {
  const auto c = collapse_to_product(bell_state(), Partition({2, 2}));
  EXPECT_LE(testing::max_abs_diff(c.matrix(), maximally_mixed(4).matrix()), 1e-15);
}

TEST(CollapseToProduct, PreservesMarginalsAndIsIdempotent) {
  const Partition p({2, 2, 2});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(8, 1 + s % 8, {s, 8});
    const auto c = collapse_to_product(rho, p);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(frobenius_distance(partial_trace(c, p, {i}).matrix(),
                                   partial_trace(rho, p, {i}).matrix()),
                1e-10);
    }
    EXPECT_LE(frobenius_distance(collapse_to_product(c, p).matrix(), c.matrix()), 1e-10);
  }
}

TEST(JointDiagonalDistribution, DiagonalReadOff) {
  const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
  const auto w = joint_diagonal_distribution(validate_density(ComplexMatrix::diagonal(d)),
                                             Partition({2, 2}));
  EXPECT_NEAR(w(0, 0), 0.1, 1e-15);
  EXPECT_NEAR(w(0, 1), 0.2, 1e-15);
  EXPECT_NEAR(w(1, 0), 0.3, 1e-15);
  EXPECT_NEAR(w(1, 1), 0.4, 1e-15);
}

TEST(JointDiagonalDistribution, Bell) {
  const auto w = joint_diagonal_distribution(bell_state(), Partition({2, 2}));
  EXPECT_NEAR(w(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(w(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(w(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(w(1, 1), 0.5, 1e-15);
}

TEST(JointDiagonalDistribution, MarginalsMatchReducedDiagonals) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Partition p({2 + s % 3, 3});
    const auto rho = random_density(p.total(), p.total(), {s, 9});
    const auto w = joint_diagonal_distribution(rho, p);
    const auto ra = partial_trace(rho, p, {0});
    const auto rb = partial_trace(rho, p, {1});
    const auto rows = w.row_marginal();
    const auto cols = w.col_marginal();
    for (std::size_t i = 0; i < p.dim(0); ++i) EXPECT_NEAR(rows[i], ra.matrix()(i, i).real(), 1e-10);
    for (std::size_t j = 0; j < p.dim(1); ++j) EXPECT_NEAR(cols[j], rb.matrix()(j, j).real(), 1e-10);
  }
}

TEST(JointDiagonalDistribution, Errors) {
  const auto rho = random_density(8, 8, {1, 1});
  try {
    joint_diagonal_distribution(rho, Partition({2, 2, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBipartite);
  }
  try {
    joint_diagonal_distribution(rho, Partition({2, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PartitionMismatch);
  }
}

}  // namespace
}  // namespace entroflow
