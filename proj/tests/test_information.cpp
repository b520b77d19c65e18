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

#include "entroflow/information.hpp"
#include "test_helpers.hpp"

namespace entroflow {
namespace {

const double kLn2 = std::log(2.0);

DensityOperator bell_state() {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> v{s, 0.0, 0.0, s};
  return pure_state_density(v);
}

TEST(Information, PureStateIsZero) {
  const std::vector<Complex> v{0.3, Complex(0.1, 0.7), -0.2};
  EXPECT_NEAR(information(pure_state_density(v)), 0.0, 1e-9);
}

TEST(Information, MaximallyMixedQubit) {
  EXPECT_NEAR(information(validate_density(ComplexMatrix::identity(2) * Complex(0.5))),
              -0.6931471805599453, 1e-12);
}

TEST(Information, SkewedDiagonal) {
  const std::vector<double> d{0.75, 0.25};
  // 0.75 ln 0.75 + 0.25 ln 0.25, evaluated at 30 digits.
  EXPECT_NEAR(information(validate_density(ComplexMatrix::diagonal(d))), -0.5623351446188083,
              1e-12);
}

TEST(Information, RangeAndMatrixLogOracle) {
  for (std::size_t dim : {2u, 3u, 4u, 6u, 9u, 16u}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto rho = random_density(dim, 1 + s % dim, {s, dim});
      const double info = information(rho);
      EXPECT_GE(info, -std::log(static_cast<double>(dim)) - 1e-9);
      EXPECT_LE(info, 1e-9);
      EXPECT_NEAR(info, testing::matrix_log_information(rho.matrix()), 1e-8);
    }
  }
}

TEST(Information, UnitaryInvariance) {
  for (std::size_t dim : {2u, 5u, 16u, 64u}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto rho = random_density(dim, 1 + s * dim / 3, {s, 1});
      const auto u = haar_unitary(dim, {s, 2});
      const auto moved = validate_density(u.conjugate(rho.matrix()));
      EXPECT_NEAR(information(moved), information(rho), 1e-8);
    }
  }
}

TEST(EntropyOfPartition, PureProductHasZeroEntropy) {
  const std::vector<Complex> a{1.0, 0.0}, b{0.6, Complex(0.0, 0.8)};
  const auto ab = tensor_product_state({pure_state_density(a), pure_state_density(b)});
  const auto r = entropy_of_partition(ab, Partition({2, 2}));
  EXPECT_NEAR(r.total, 0.0, 1e-9);
}

TEST(EntropyOfPartition, BellHasTwoLn2) {
  const auto r = entropy_of_partition(bell_state(), Partition({2, 2}), 1.0);
  EXPECT_NEAR(r.total, 2.0 * kLn2, 1e-12);
  ASSERT_EQ(r.per_part.size(), 2u);
  EXPECT_NEAR(r.per_part[0], kLn2, 1e-12);
  EXPECT_NEAR(r.total, -r.k_B * r.information_sum, 1e-12);
}

TEST(EntropyOfPartition, ScalesWithBoltzmannConstant) {
  const auto r = entropy_of_partition(bell_state(), Partition({2, 2}), 2.5);
  EXPECT_NEAR(r.total, 5.0 * kLn2, 1e-12);
  EXPECT_NEAR(r.information_sum, -2.0 * kLn2, 1e-12);
  EXPECT_THROW(entropy_of_partition(bell_state(), Partition({2, 2}), 0.0), Error);
}

TEST(EntropyOfPartition, MatchesNaiveRecomputation) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density(4, 1 + s % 4, {s, 3});
    double expected = 0.0;
    for (const auto& reduced : {testing::naive_trace_b(rho.matrix(), 2, 2),
                                testing::naive_trace_a(rho.matrix(), 2, 2)}) {
      for (const double l : testing::eigen_spectrum(reduced))
        if (l > 1e-12) expected -= l * std::log(l);
    }
    const auto r = entropy_of_partition(rho, Partition({2, 2}));
    EXPECT_NEAR(r.total, expected, 1e-9);
    for (const auto si : r.per_part) EXPECT_GE(si, -1e-9);
  }
}

TEST(BasisInformation, EigenbasisGivesInformation) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = random_density(5, 1 + s % 5, {s, 4});
    EXPECT_NEAR(basis_information(rho, ObservableBasis::eigenbasis(rho)), information(rho), 1e-9);
  }
}

TEST(BasisInformation, BellInProductBasis) {
  const double v = basis_information(bell_state(), ObservableBasis::computational(4));
  EXPECT_NEAR(v, -kLn2, 1e-12);
  EXPECT_LE(v, information(bell_state()));
}

TEST(BasisInformation, HaarBasisBound) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = random_density(4, 1 + s % 4, {s, 5});
    const ObservableBasis basis(haar_unitary(4, {s, 6}));
    EXPECT_LE(basis_information(rho, basis), information(rho) + 1e-8);
  }
}

TEST(BasisInformation, DimensionMismatch) {
  try {
    basis_information(bell_state(), ObservableBasis::computational(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(ObservableBasis(ComplexMatrix::identity(2) * Complex(2.0)), Error);
}

TEST(CorrelationInformation, ProductStateIsZero) {
  const auto ab = tensor_product_state({random_density(2, 2, {1, 0}), random_density(3, 3, {2, 0})});
  EXPECT_NEAR(correlation_information(ab, Partition({2, 3})), 0.0, 1e-8);
}

TEST(CorrelationInformation, BellIsTwoLn2) {
  EXPECT_NEAR(correlation_information(bell_state(), Partition({2, 2})), 2.0 * kLn2, 1e-12);
}

TEST(CorrelationInformation, NonnegativeOnThreeQubits) {
  const Partition p({2, 2, 2});
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = random_density(8, 1 + s % 8, {s, 7});
    EXPECT_GE(correlation_information(rho, p), -1e-8);
  }
}

TEST(CorrelationInformation, RecursiveBipartitionTelescopes) {
  // [2,2,2] split as 0|12 then 1|2 gives the same total as the direct formula.
  const Partition p3({2, 2, 2});
  const Partition p_a_bc({2, 4});
  const Partition p_b_c({2, 2});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = random_density(8, 8, {s, 8});
    const auto bc = partial_trace(rho, p3, {1, 2});
    const double recursive =
        correlation_information(rho, p_a_bc) + correlation_information(bc, p_b_c);
    EXPECT_NEAR(recursive, correlation_information(rho, p3), 1e-10);
  }
}

TEST(CorrelationInformation, NeedsTwoParts) {
  EXPECT_THROW(correlation_information(bell_state(), Partition({4})), Error);
}

}  // namespace
}  // namespace entroflow
