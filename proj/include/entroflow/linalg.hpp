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
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "entroflow/error.hpp"

namespace entroflow {

using Complex = std::complex<double>;

/// Largest number of rows (or columns) any matrix in the library may have.
inline constexpr std::size_t kDefaultDimensionCap = 4096;

namespace detail {
/// a * b without the C99 Annex G NaN recovery path.
inline Complex cmul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
}  // namespace detail

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != checked_size(rows, cols)) {
      detail::fail(ErrorCode::ShapeMismatch,
                   "entry count " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        detail::fail(ErrorCode::ShapeMismatch, "non-finite matrix entry");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      detail::fail(ErrorCode::ShapeMismatch, "inner dimensions differ in product");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        const Complex* brow = &b.data_[k * b.cols_];
        Complex* orow = &out.data_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += detail::cmul(aik, brow[j]);
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      detail::fail(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
    }
    if (rows > kDefaultDimensionCap || cols > kDefaultDimensionCap) {
      detail::fail(ErrorCode::DimensionOverflow,
                   std::to_string(rows) + "x" + std::to_string(cols) +
                       " exceeds the dimension cap " +
                       std::to_string(kDefaultDimensionCap));
    }
    return rows * cols;
  }

  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      detail::fail(ErrorCode::ShapeMismatch, "operands have different shapes");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    detail::fail(ErrorCode::ShapeMismatch, "frobenius_distance needs equal shapes");
  }
  double s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::norm(da[i] - db[i]);
  return std::sqrt(s);
}

/// Kronecker product; entry (ia*rb + ib, ja*cb + jb) = A(ia,ja) B(ib,jb).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          std::size_t cap = kDefaultDimensionCap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    detail::fail(ErrorCode::DimensionOverflow,
                 "Kronecker product of size " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex s = a(ia, ja);
      if (s == Complex{}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return out;
}

/// ||M - M^dagger||_F / ||M||_F, or 0 for the zero matrix.
inline double hermiticity_defect(const ComplexMatrix& m) {
  const double norm = m.frobenius_norm();
  if (norm == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::norm(m(r, c) - std::conj(m(c, r)));
  return std::sqrt(s) / norm;
}

/// (M + M^dagger) / 2.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  return out;
}

/// Relative Hermiticity tolerance accepted by every Hermitian entry point.
inline constexpr double kHermitianTolerance = 1e-9;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns

  /// V diag(lambda) V^dagger.
  ComplexMatrix reconstruct() const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          s += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
        out(r, c) = s;
      }
    return out;
  }
};

struct EigOptions {
  double tol = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies a real Givens rotation that zeroes it. Sweeps stop
/// once the off-diagonal Frobenius norm falls to tol * ||M||_F.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& m, EigOptions opts = {}) {
  if (!m.square()) detail::fail(ErrorCode::NotHermitian, "matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    detail::fail(ErrorCode::NotHermitian,
                 "relative Hermiticity defect " + std::to_string(defect));
  }

  const std::size_t n = m.rows();
  const ComplexMatrix h = hermitian_part(m);
  std::vector<Complex> a(h.data().begin(), h.data().end());
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i].real();
  // Row k of w is column k of V, so every update below runs over contiguous
  // memory.
  std::vector<Complex> w(n * n);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;

  const double threshold = opts.tol * h.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += std::norm(a[r * n + c]);
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep++ >= opts.max_sweeps) {
      detail::fail(ErrorCode::NoConvergence,
                   "Jacobi iteration exceeded " + std::to_string(opts.max_sweeps) +
                       " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex e = apq / r;  // e^{i phi}
        const Complex phase = std::conj(e);

        const double zeta = (diag[q] - diag[p]) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J on (p, q) is [[c, s], [-s e^{-i phi}, c e^{-i phi}]]. Rows p and q
        // of J^dagger A J outside the pivot block equal those of J^dagger A;
        // the matching columns follow by Hermiticity.
        Complex* rp = &a[p * n];
        Complex* rq = &a[q * n];
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex b = detail::cmul(e, rq[k]);
          const Complex np = c * rp[k] - s * b;
          const Complex nq = s * rp[k] + c * b;
          rp[k] = np;
          rq[k] = nq;
          a[k * n + p] = std::conj(np);
          a[k * n + q] = std::conj(nq);
        }
        diag[p] -= t * r;
        diag[q] += t * r;
        rp[p] = diag[p];
        rq[q] = diag[q];
        rp[q] = 0.0;
        rq[p] = 0.0;

        Complex* wp = &w[p * n];
        Complex* wq = &w[q * n];
        for (std::size_t k = 0; k < n; ++k) {
          const Complex d = detail::cmul(phase, wq[k]);
          const Complex np = c * wp[k] - s * d;
          wq[k] = s * wp[k] + c * d;
          wp[k] = np;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return diag[i] > diag[j]; });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = w[order[k] * n + r];
  }
  return out;
}

/// f(M) = V diag(f(lambda)) V^dagger for Hermitian M.
template <typename F>
ComplexMatrix hermitian_function(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<Complex> fl(n);
  for (std::size_t k = 0; k < n; ++k) fl[k] = f(eig.eigenvalues[k]);
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.eigenvectors(r, k) * fl[k] * std::conj(eig.eigenvectors(c, k));
      out(r, c) = s;
    }
  return out;
}

}  // namespace entroflow
