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

// Randomized audit suites behind `entroflow lemmas` and `entroflow check`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "entroflow/composite.hpp"
#include "entroflow/dynamics.hpp"
#include "entroflow/inequalities.hpp"
#include "entroflow/information.hpp"
#include "entroflow/rng.hpp"
#include "entroflow/state.hpp"

namespace entroflow::audit {

enum class Bound { AtLeast, Above, AtMost };

/// Outcome of one randomized suite. `worst` is the extreme value of the
/// audited statistic in the direction that threatens the bound.
struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  double worst = 0.0;
  Bound kind = Bound::AtLeast;
  double bound = 0.0;
  std::size_t violations = 0;
  /// Seed stream of the first violating sample, when any.
  std::uint64_t first_violation_stream = 0;

  bool pass() const noexcept { return violations == 0; }

  void record(double value, std::uint64_t stream) {
    if (samples == 0) worst = value;
    ++samples;
    bool ok = true;
    switch (kind) {
      case Bound::AtLeast:
        worst = std::min(worst, value);
        ok = value >= bound;
        break;
      case Bound::Above:
        worst = std::min(worst, value);
        ok = value > bound;
        break;
      case Bound::AtMost:
        worst = std::max(worst, value);
        ok = value <= bound;
        break;
    }
    if (!ok || !std::isfinite(value)) {
      if (violations == 0) first_violation_stream = stream;
      ++violations;
    }
  }
};

inline std::string_view to_string(Bound b) {
  switch (b) {
    case Bound::AtLeast: return ">=";
    case Bound::Above: return ">";
    case Bound::AtMost: return "<=";
  }
  return "?";
}

inline bool all_pass(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });
}

namespace detail {

inline std::size_t draw_size(GaussianSource& g, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  return lo + static_cast<std::size_t>(g.bits() % (hi - lo + 1));
}

/// Strictly positive probability vector (normalized exponential draws).
inline std::vector<double> positive_simplex(std::size_t n, GaussianSource& g) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(g.uniform(std::numeric_limits<double>::min(), 1.0));
    x = std::max(x, 1e-6);
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

inline std::vector<double> uniform_normalized(std::size_t n, GaussianSource& g, double lo,
                                              double hi) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) sum += (x = g.uniform(lo, hi));
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace detail

/// Suite seeds: stream `suite` of the base seed, then one child per sample.
inline RngSeed suite_seed(std::uint64_t base, std::uint64_t suite) { return RngSeed{base, suite}; }

/// x ln x >= x - 1 on log-uniform x in [1e-9, 1e3]; strictly away from x = 1.
inline std::vector<SuiteResult> lemma1_suite(std::size_t samples, std::uint64_t seed) {
  SuiteResult nonneg{"lemma1_nonnegative", 0, 0.0, Bound::AtLeast, -1e-12};
  SuiteResult strict{"lemma1_strict_off_unity", 0, 0.0, Bound::Above, 0.0};
  GaussianSource g(suite_seed(seed, 1));
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = std::pow(10.0, g.uniform(-9.0, 3.0));
    const double gap = xlnx_gap(x);
    nonneg.record(gap, k);
    if (std::abs(x - 1.0) > 1e-6) strict.record(gap, k);
  }
  return {nonneg, strict};
}

/// Weighted-mean form of convexity for w ln w.
inline SuiteResult lemma2_suite(std::size_t samples, std::size_t max_size, std::uint64_t seed) {
  SuiteResult r{"lemma2_mixing", 0, 0.0, Bound::AtLeast, -1e-12};
  const RngSeed base = suite_seed(seed, 2);
  for (std::size_t k = 0; k < samples; ++k) {
    GaussianSource g(base.child(k));
    const std::size_t n = detail::draw_size(g, 1, max_size);
    auto x = detail::positive_simplex(n, g);
    // Some zero weights: the lemma only needs x_i >= 0.
    if (n > 1) {
      for (auto& xi : x)
        if (g.uniform(0.0, 1.0) < 0.2) xi = 0.0;
      double sum = 0.0;
      for (const auto xi : x) sum += xi;
      if (sum == 0.0) {
        x[0] = 1.0;
        sum = 1.0;
      }
      for (auto& xi : x) xi /= sum;
    }
    std::vector<double> w(n);
    for (auto& wi : w) wi = std::pow(10.0, g.uniform(-1.0, 1.0));
    r.record(mixing_inequality_gap(ProbabilityVector(std::move(x)), w), k);
  }
  return r;
}

/// Doubly stochastic contraction on unistochastic T = |U|^2, U Haar.
inline SuiteResult lemma3_suite(std::size_t samples, std::size_t max_size, std::uint64_t seed) {
  SuiteResult r{"lemma3_contraction", 0, 0.0, Bound::AtLeast, -1e-10};
  const RngSeed base = suite_seed(seed, 3);
  for (std::size_t k = 0; k < samples; ++k) {
    const RngSeed s = base.child(k);
    GaussianSource g(s.child(0));
    const std::size_t n = detail::draw_size(g, 1, max_size);
    ProbabilityVector w(detail::positive_simplex(n, g));
    const auto t = unistochastic_from_unitary(haar_unitary(n, s.child(1)));
    r.record(contract_distribution(w, t).gap, k);
  }
  return r;
}

/// Perturbs the smallest entry of the table by +delta and renormalizes.
/// The smallest entry sits on the smallest row and column marginals, both
/// at most 1/2, which makes the induced mutual information at least about
/// delta^2 / 2.
inline JointDistribution perturb_smallest(const JointDistribution& w, double delta) {
  std::vector<double> e(w.weights().begin(), w.weights().end());
  const auto it = std::min_element(e.begin(), e.end());
  *it += delta;
  for (auto& x : e) x /= 1.0 + delta;
  return JointDistribution(w.rows(), w.cols(), std::move(e));
}

inline std::vector<SuiteResult> lemma4_suite(std::size_t samples, std::size_t max_size,
                                             std::uint64_t seed) {
  SuiteResult sub{"lemma4_subadditivity", 0, 0.0, Bound::AtLeast, -1e-10};
  SuiteResult eq{"lemma4_equality_factorized", 0, 0.0, Bound::AtMost, 1e-10};
  SuiteResult strict{"lemma4_strict_perturbed", 0, 0.0, Bound::Above, 1e-5};
  const RngSeed base = suite_seed(seed, 4);
  const std::size_t hi = std::max<std::size_t>(max_size, 2);
  for (std::size_t k = 0; k < samples; ++k) {
    GaussianSource g(base.child(k));
    const std::size_t ra = detail::draw_size(g, 2, hi);
    const std::size_t rb = detail::draw_size(g, 2, hi);

    JointDistribution joint(ra, rb, detail::positive_simplex(ra * rb, g));
    sub.record(joint_subadditivity_gap(joint).gap, k);

    const auto a = detail::uniform_normalized(ra, g, 1.0, 2.0);
    const auto b = detail::uniform_normalized(rb, g, 1.0, 2.0);
    std::vector<double> outer(ra * rb);
    for (std::size_t i = 0; i < ra; ++i)
      for (std::size_t j = 0; j < rb; ++j) outer[i * rb + j] = a[i] * b[j];
    JointDistribution factorized(ra, rb, std::move(outer));
    eq.record(std::abs(joint_subadditivity_gap(factorized).gap), k);
    strict.record(joint_subadditivity_gap(perturb_smallest(factorized, 0.01)).gap, k);
  }
  return {sub, eq, strict};
}

struct LemmaAuditOptions {
  std::size_t samples = 1000;
  std::size_t max_size = 8;
  std::uint64_t seed = 0;
};

/// All lemma suites; Lemma 1 draws ten scalars per sample.
inline std::vector<SuiteResult> run_lemma_audit(const LemmaAuditOptions& o) {
  std::vector<SuiteResult> out;
  for (auto& r : lemma1_suite(10 * o.samples, o.seed)) out.push_back(std::move(r));
  out.push_back(lemma2_suite(o.samples, o.max_size, o.seed));
  out.push_back(lemma3_suite(o.samples, o.max_size, o.seed));
  for (auto& r : lemma4_suite(o.samples, o.max_size, o.seed)) out.push_back(std::move(r));
  return out;
}

/// Naive partial trace: visits every (row, col) pair of the full matrix and
/// keeps those whose traced digits agree. Independent of the offset-table
/// implementation in composite.hpp.
inline ComplexMatrix reference_partial_trace(const ComplexMatrix& rho,
                                             const std::vector<std::size_t>& dims,
                                             const std::vector<bool>& keep) {
  const std::size_t parts = dims.size();
  auto digits = [&](std::size_t n) {
    std::vector<std::size_t> d(parts);
    for (std::size_t i = parts; i-- > 0;) {
      d[i] = n % dims[i];
      n /= dims[i];
    }
    return d;
  };
  std::size_t kept_dim = 1;
  for (std::size_t i = 0; i < parts; ++i)
    if (keep[i]) kept_dim *= dims[i];
  auto kept_index = [&](const std::vector<std::size_t>& d) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parts; ++i)
      if (keep[i]) n = n * dims[i] + d[i];
    return n;
  };
  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t r = 0; r < rho.rows(); ++r) {
    const auto dr = digits(r);
    for (std::size_t c = 0; c < rho.cols(); ++c) {
      const auto dc = digits(c);
      bool diagonal = true;
      for (std::size_t i = 0; i < parts && diagonal; ++i)
        if (!keep[i] && dr[i] != dc[i]) diagonal = false;
      if (diagonal) out(kept_index(dr), kept_index(dc)) += rho(r, c);
    }
  }
  return out;
}

/// Every partition (ordered dims >= 2) with total dimension <= max_total.
inline std::vector<std::vector<std::size_t>> partitions_up_to(std::size_t max_total) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& dims : frontier) {
      std::size_t total = 1;
      for (const auto d : dims) total *= d;
      for (std::size_t d = 2; total * d <= max_total; ++d) {
        auto grown = dims;
        grown.push_back(d);
        out.push_back(grown);
        next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

struct CheckOptions {
  std::size_t max_dim = 16;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
};

/// Rank drawn uniformly from [1, dim].
inline DensityOperator random_state(std::size_t dim, GaussianSource& g, RngSeed seed) {
  return random_density(dim, detail::draw_size(g, 1, dim), seed);
}

inline std::vector<SuiteResult> run_invariant_check(const CheckOptions& o) {
  SuiteResult conservation{"information_conservation_abs_delta", 0, 0.0, Bound::AtMost, 1e-8};
  SuiteResult subadd{"subadditivity_correlation", 0, 0.0, Bound::AtLeast, -1e-8};
  SuiteResult product{"subadditivity_product_equality", 0, 0.0, Bound::AtMost, 1e-8};
  SuiteResult basis{"basis_information_bound_margin", 0, 0.0, Bound::AtLeast, -1e-8};
  SuiteResult eigbasis{"basis_information_eigenbasis_equality", 0, 0.0, Bound::AtMost, 1e-9};
  SuiteResult ptrace{"partial_trace_oracle_distance", 0, 0.0, Bound::AtMost, 1e-12};

  const std::size_t max_dim = std::max<std::size_t>(o.max_dim, 2);
  const auto shapes = partitions_up_to(max_dim);
  const auto small_shapes = partitions_up_to(std::min<std::size_t>(max_dim, 36));

  for (std::size_t k = 0; k < o.trials; ++k) {
    const RngSeed s = RngSeed{o.seed, 0}.child(k);
    GaussianSource g(s.child(0));

    // Unitary invariance of I.
    {
      const std::size_t dim = detail::draw_size(g, 2, max_dim);
      const auto rho = random_state(dim, g, s.child(1));
      const auto u = haar_unitary(dim, s.child(2));
      const auto moved = validate_density(u.conjugate(rho.matrix()));
      conservation.record(std::abs(information(moved) - information(rho)), k);
    }
    // Subadditivity and its equality case.
    {
      const Partition p(shapes[detail::draw_size(g, 0, shapes.size() - 1)]);
      if (p.parts() >= 2) {
        const auto rho = random_state(p.total(), g, s.child(3));
        subadd.record(correlation_information(rho, p), k);
        std::vector<DensityOperator> factors;
        for (std::size_t i = 0; i < p.parts(); ++i) {
          factors.push_back(random_state(p.dim(i), g, s.child(10 + i)));
        }
        product.record(std::abs(correlation_information(tensor_product_state(factors), p)), k);
      }
    }
    // Basis-information bound.
    {
      const std::size_t dim = detail::draw_size(g, 2, max_dim);
      const auto rho = random_state(dim, g, s.child(4));
      const ObservableBasis haar(haar_unitary(dim, s.child(5)));
      basis.record(information(rho) - basis_information(rho, haar), k);
      eigbasis.record(
          std::abs(basis_information(rho, ObservableBasis::eigenbasis(rho)) - information(rho)),
          k);
    }
    // Partial trace against the naive oracle.
    {
      const auto& dims = small_shapes[detail::draw_size(g, 0, small_shapes.size() - 1)];
      const Partition p(dims);
      const auto rho = random_state(p.total(), g, s.child(6));
      std::vector<bool> keep(dims.size());
      std::vector<std::size_t> keep_idx;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        keep[i] = g.bits() % 2 == 0;
        if (keep[i]) keep_idx.push_back(i);
      }
      if (keep_idx.empty()) {
        keep[0] = true;
        keep_idx.push_back(0);
      }
      const auto fast = partial_trace(rho, p, keep_idx);
      ptrace.record(frobenius_distance(fast.matrix(),
                                       reference_partial_trace(rho.matrix(), dims, keep)),
                    k);
    }
  }
  return {conservation, subadd, product, basis, eigbasis, ptrace};
}

}  // namespace entroflow::audit
