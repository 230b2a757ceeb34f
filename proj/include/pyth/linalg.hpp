// Copyright 2026 The pyth Authors
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

// Dense complex linear algebra shared by the module and lifting code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace pyth {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Relative threshold for rank decisions.
inline constexpr double kRankTolerance = 1e-10;
/// Default tolerance for relation residuals.
inline constexpr double kDefaultTolerance = 1e-9;

inline double frobenius(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.norm();
}

/// Orthonormal basis (as columns) of the kernel of `a`. Singular values below
/// kRankTolerance * max(1, largest singular value) count as zero.
inline ComplexMatrix nullspace(const ComplexMatrix& a,
                               double rel_tol = kRankTolerance) {
  const Eigen::Index n = a.cols();
  if (n == 0) return ComplexMatrix(0, 0);
  if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * scale) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

inline Eigen::Index numerical_rank(const ComplexMatrix& a,
                                   double rel_tol = kRankTolerance) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv(0));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * scale) ++rank;
  return rank;
}

/// Incrementally grown orthonormal basis of a subspace of C^dim.
class SpanBuilder {
 public:
  explicit SpanBuilder(Eigen::Index dim, double rel_tol = kRankTolerance)
      : dim_(dim), rel_tol_(rel_tol) {}

  /// Adds `v` if it leaves the current span; returns whether it did.
  bool add(const ComplexVector& v) {
    if (size() == static_cast<std::size_t>(dim_)) return false;
    const double norm = v.norm();
    if (norm == 0.0) return false;
    ComplexVector r = v;
    // Two passes of Gram-Schmidt keep the basis orthonormal to working
    // precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) r -= b.dot(r) * b;
    const double rest = r.norm();
    if (rest <= rel_tol_ * std::max(1.0, norm)) return false;
    basis_.push_back(r / rest);
    return true;
  }

  std::size_t size() const noexcept { return basis_.size(); }
  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<ComplexVector>& basis() const noexcept { return basis_; }

 private:
  Eigen::Index dim_;
  double rel_tol_;
  std::vector<ComplexVector> basis_;
};

/// Standard normal samples from a 64-bit Mersenne twister via Box-Muller.
/// The transform is spelled out so the stream is identical across standard
/// libraries for a given seed.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53 random bits in (0, 1].
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
  }

  ComplexMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace pyth
