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
#include <complex>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entroflow/composite.hpp"
#include "entroflow/error.hpp"
#include "entroflow/information.hpp"
#include "entroflow/linalg.hpp"
#include "entroflow/rng.hpp"
#include "entroflow/state.hpp"

namespace entroflow {

/// Hermitian generator of the time evolution, in units with hbar = 1.
class Hamiltonian {
 public:
  explicit Hamiltonian(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.square()) detail::fail(ErrorCode::NotHermitian, "Hamiltonian must be square");
    if (hermiticity_defect(matrix_) > 1e-10) {
      detail::fail(ErrorCode::NotHermitian, "Hamiltonian is not Hermitian");
    }
    matrix_ = hermitian_part(matrix_);
  }

  static Hamiltonian zero(std::size_t dim) { return Hamiltonian(ComplexMatrix(dim, dim)); }

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// exp(-i H t) through the eigendecomposition of H.
  Unitary propagator(double t) const {
    const auto eig = hermitian_eig(matrix_);
    return Unitary(hermitian_function(
        eig, [t](double e) { return std::exp(Complex(0.0, -e * t)); }));
  }

 private:
  ComplexMatrix matrix_;
};

/// (G + G^dagger)/2 with G Ginibre: a GUE-style random Hermitian matrix.
inline ComplexMatrix gaussian_hermitian(std::size_t dim, GaussianSource& gauss) {
  return hermitian_part(ginibre(dim, dim, gauss));
}

/// local * sum_i (I (x) ... (x) h_i (x) ... (x) I) + coupling * G.
/// Local terms draw from child streams 0..n-1 of the seed, the global term
/// from stream n, so each piece is reproducible on its own.
inline Hamiltonian random_hamiltonian(const Partition& p, double local_strength,
                                      double coupling_strength, RngSeed seed) {
  if (!(local_strength >= 0.0) || !(coupling_strength >= 0.0)) {
    detail::fail(ErrorCode::NonPositiveInput, "Hamiltonian strengths must be nonnegative");
  }
  ComplexMatrix h(p.total(), p.total());
  for (std::size_t i = 0; i < p.parts(); ++i) {
    GaussianSource gauss(seed.child(i));
    const ComplexMatrix local = gaussian_hermitian(p.dim(i), gauss);
    const std::size_t left = p.total() / (p.stride(i) * p.dim(i));
    const std::size_t right = p.stride(i);
    ComplexMatrix embedded = local;
    if (left > 1) embedded = kron(ComplexMatrix::identity(left), embedded);
    if (right > 1) embedded = kron(embedded, ComplexMatrix::identity(right));
    h += embedded * Complex(local_strength);
  }
  GaussianSource gauss(seed.child(p.parts()));
  h += gaussian_hermitian(p.total(), gauss) * Complex(coupling_strength);
  return Hamiltonian(std::move(h));
}

/// rho(t) = U rho U^dagger with U = exp(-i H t).
inline DensityOperator evolve(const DensityOperator& rho, const Hamiltonian& h, double t) {
  if (rho.dim() != h.dim()) {
    detail::fail(ErrorCode::DimensionMismatch, "state and Hamiltonian dimensions differ");
  }
  return validate_density(h.propagator(t).conjugate(rho.matrix()));
}

struct PureRandomStart {};
struct MixedRandomStart {
  std::size_t rank = 1;
};
struct ExplicitStart {
  ComplexMatrix matrix;
};
using InitialState = std::variant<PureRandomStart, MixedRandomStart, ExplicitStart>;

struct CycleConfig {
  Partition partition{std::vector<std::size_t>{2, 2}};
  std::size_t cycles = 20;
  double dt = 1.0;
  double local_strength = 1.0;
  double coupling_strength = 1.0;
  double k_B = 1.0;
  RngSeed seed{};
  InitialState initial_state = PureRandomStart{};
  /// Reuse the first cycle's Hamiltonian instead of drawing a fresh one.
  bool fixed_hamiltonian = false;
};

/// One measurement event.
struct TrajectoryStep {
  std::size_t cycle = 0;
  double time = 0.0;
  double information = 0.0;               // I of the state just before collapse
  double entropy_total = 0.0;             // measured S
  std::vector<double> entropy_parts;      // S_i
  double correlation_surrendered = 0.0;   // I - sum_i I_i, lost at collapse
  double information_post_collapse = 0.0; // I of the product state
};

struct Trajectory {
  std::vector<std::size_t> part_dims;
  double k_B = 1.0;
  std::vector<TrajectoryStep> steps;
};

namespace detail {

inline DensityOperator initial_density(const CycleConfig& cfg, RngSeed seed) {
  const std::size_t dim = cfg.partition.total();
  return std::visit(
      [&](const auto& start) -> DensityOperator {
        using T = std::decay_t<decltype(start)>;
        if constexpr (std::is_same_v<T, PureRandomStart>) {
          return random_pure_density(dim, seed);
        } else if constexpr (std::is_same_v<T, MixedRandomStart>) {
          return random_density(dim, start.rank, seed);
        } else {
          if (start.matrix.rows() != dim) {
            fail(ErrorCode::PartitionMismatch, "explicit initial state has wrong dimension");
          }
          return validate_density(start.matrix);
        }
      },
      cfg.initial_state);
}

}  // namespace detail

/// Measure (collapse) then evolve, cfg.cycles times. Stream 0 of the seed
/// prepares the initial state; stream c + 1 draws the Hamiltonian of cycle c.
inline Trajectory run_cycle_experiment(const CycleConfig& cfg) {
  if (cfg.cycles < 1) detail::fail(ErrorCode::InvalidConfig, "cycles must be at least 1");
  if (!(cfg.dt > 0.0)) detail::fail(ErrorCode::InvalidConfig, "dt must be positive");
  if (!(cfg.k_B > 0.0)) detail::fail(ErrorCode::InvalidConfig, "k_B must be positive");

  const Partition& p = cfg.partition;
  Trajectory traj;
  traj.part_dims.assign(p.dims().begin(), p.dims().end());
  traj.k_B = cfg.k_B;
  traj.steps.reserve(cfg.cycles);

  DensityOperator rho = detail::initial_density(cfg, cfg.seed.child(0));
  std::optional<Hamiltonian> fixed;
  for (std::size_t c = 0; c < cfg.cycles; ++c) {
    TrajectoryStep step;
    step.cycle = c;
    step.time = static_cast<double>(c) * cfg.dt;
    step.information = information(rho);
    const auto report = entropy_of_partition(rho, p, cfg.k_B);
    step.entropy_total = report.total;
    step.entropy_parts = report.per_part;
    step.correlation_surrendered = step.information - report.information_sum;

    rho = collapse_to_product(rho, p);
    step.information_post_collapse = information(rho);
    traj.steps.push_back(std::move(step));

    if (cfg.fixed_hamiltonian) {
      if (!fixed) {
        fixed = random_hamiltonian(p, cfg.local_strength, cfg.coupling_strength,
                                   cfg.seed.child(1));
      }
      rho = evolve(rho, *fixed, cfg.dt);
    } else {
      const auto h = random_hamiltonian(p, cfg.local_strength, cfg.coupling_strength,
                                        cfg.seed.child(c + 1));
      rho = evolve(rho, h, cfg.dt);
    }
  }
  return traj;
}

/// Runs trials 0..n-1 with seeds (cfg.seed.seed, stream = trial). Output is
/// ordered by trial index and identical whether or not trials run in parallel.
inline std::vector<Trajectory> run_trials(const CycleConfig& cfg, std::size_t trials,
                                          bool parallel = false) {
  auto one = [&cfg](std::size_t k) {
    CycleConfig c = cfg;
    c.seed = RngSeed{cfg.seed.seed, cfg.seed.stream + k};
    return run_cycle_experiment(c);
  };
  std::vector<Trajectory> out;
  out.reserve(trials);
  if (!parallel) {
    for (std::size_t k = 0; k < trials; ++k) out.push_back(one(k));
    return out;
  }
  std::vector<std::future<Trajectory>> pending;
  pending.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) pending.push_back(std::async(std::launch::async, one, k));
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

struct SecondLawReport {
  bool pass = true;
  /// Most negative increment S[k+1] - S[k]; positive when strictly increasing.
  double worst_increment = std::numeric_limits<double>::infinity();
  /// Index k+1 of the event that ends the worst increment.
  std::size_t worst_index = 0;
};

inline SecondLawReport verify_second_law(std::span<const double> entropies, double tol) {
  if (entropies.size() < 2) {
    detail::fail(ErrorCode::TooFewEvents, "need at least two measurement events");
  }
  SecondLawReport r;
  for (std::size_t k = 0; k + 1 < entropies.size(); ++k) {
    const double inc = entropies[k + 1] - entropies[k];
    if (inc < r.worst_increment) {
      r.worst_increment = inc;
      r.worst_index = k + 1;
    }
  }
  r.pass = r.worst_increment >= -tol;
  return r;
}

inline std::vector<double> measured_entropies(const Trajectory& traj) {
  std::vector<double> s;
  s.reserve(traj.steps.size());
  for (const auto& step : traj.steps) s.push_back(step.entropy_total);
  return s;
}

inline SecondLawReport verify_second_law(const Trajectory& traj, double tol) {
  return verify_second_law(measured_entropies(traj), tol);
}

}  // namespace entroflow
