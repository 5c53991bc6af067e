// Copyright 2026 The usdkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Complex Hermitian linear algebra with an explicit tolerance policy.
 *
 * Everything here is a free function over dense Eigen matrices, templated on
 * the real scalar type. Hermitian, unitary and PSD are properties checked by
 * predicates rather than separate wrapper types, so results compose in
 * ordinary Eigen expressions.
 *
 * Spectral functions (square root, pseudo-inverse, support projector) share
 * one convention: the scale of a matrix is its largest |eigenvalue|, an
 * eigenvalue below -tol.psd * scale is an error, and anything in
 * [-tol.psd * scale, 0) is clipped to zero before the function is applied.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "usdkit/errors.hpp"

namespace usdkit {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMat = CMatrix<double>;
using CVec = CVector<double>;
using RVec = RVector<double>;
using Complex = std::complex<double>;

/// Tolerances used throughout the library. All are strictly positive and
/// below 1e-3.
struct NumericConfig {
  double hermitian = 1e-10;  ///< relative, against max |entry|
  double psd = 1e-9;         ///< eigenvalue floor relative to largest |eigenvalue|
  double rank = 1e-9;        ///< eigenvalue cutoff relative to largest |eigenvalue|
  double unitary = 1e-9;     ///< absolute, on U^dagger U - 1
  double equality = 1e-8;    ///< absolute, for scalar comparisons

  void validate() const {
    for (double t : {hermitian, psd, rank, unitary, equality}) {
      if (!(t > 0.0 && t < 1e-3)) {
        throw Error(Errc::InvalidArgument, "tolerances must lie in (0, 1e-3)");
      }
    }
  }
};

namespace matlin {

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0;
  return a.cwiseAbs().maxCoeff();
}

template <typename Real>
CMatrix<Real> identity(Eigen::Index dim) {
  return CMatrix<Real>::Identity(dim, dim);
}

/// (A + A^dagger) / 2 without any check.
template <typename Real>
CMatrix<Real> symmetrized(const CMatrix<Real>& a) {
  CMatrix<Real> out = (a + a.adjoint()) / Real(2);
  return out;
}

template <typename Real>
void require_square(const CMatrix<Real>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(Errc::InvalidArgument, std::string(what) + ": matrix must be square and non-empty");
  }
  if (!a.allFinite()) {
    throw Error(Errc::InvalidArgument, std::string(what) + ": non-finite entry");
  }
}

template <typename Real>
bool is_hermitian(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  const Real ref = std::max<Real>(max_abs(a), scale);
  return max_abs(CMatrix<Real>(a - a.adjoint())) <= Real(cfg.hermitian) * ref;
}

/// Symmetrizes A after checking that its anti-Hermitian part is rounding
/// noise relative to max(|A|_max, scale). Internal callers pass the scale of
/// their inputs so that nearly-zero results are not rejected.
template <typename Real>
CMatrix<Real> hermitize(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  require_square(a, "hermitize");
  if (!is_hermitian(a, cfg, scale)) {
    throw Error(Errc::NotHermitian, "anti-Hermitian part exceeds tolerance");
  }
  return symmetrized(a);
}

template <typename Real>
bool is_unitary(const CMatrix<Real>& u, const NumericConfig& cfg = {}) {
  if (u.rows() != u.cols()) return false;
  const CMatrix<Real> gram = u.adjoint() * u;
  return max_abs(CMatrix<Real>(gram - identity<Real>(u.rows()))) <= Real(cfg.unitary);
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
template <typename Real>
struct EigenSystem {
  RVector<Real> values;
  CMatrix<Real> vectors;

  /// Largest |eigenvalue|, zero for the zero matrix.
  Real scale() const {
    if (values.size() == 0) return 0;
    return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  }
  Real min() const { return values(values.size() - 1); }
  Real max() const { return values(0); }
};

template <typename Real>
EigenSystem<Real> eig_hermitian(const CMatrix<Real>& a) {
  require_square(a, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(symmetrized(a));
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = a.rows();
  EigenSystem<Real> out{RVector<Real>(n), CMatrix<Real>(n, n)};
  // Eigen sorts ascending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

template <typename Real>
Real min_eigenvalue(const CMatrix<Real>& a) {
  return eig_hermitian(a).min();
}

template <typename Real>
bool is_psd(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  const auto es = eig_hermitian(a);
  return es.min() >= -Real(cfg.psd) * std::max(es.scale(), scale);
}

namespace detail {

/// Checks the PSD floor and clips. Eigenvalues at the level of
/// eigensolver rounding are set to exactly zero as well: otherwise the
/// square root turns 1e-17 noise on a rank-deficient input into 3e-9 entries.
template <typename Real>
RVector<Real> clipped_spectrum(const EigenSystem<Real>& es, const NumericConfig& cfg, const char* what,
                               Real floor_scale = 0) {
  const Real scale = std::max(es.scale(), floor_scale);
  if (es.values.size() > 0 && es.min() < -Real(cfg.psd) * scale) {
    throw Error(Errc::NotPsd, std::string(what) + ": eigenvalue " + std::to_string(es.min()) +
                                  " below the PSD floor");
  }
  const Real noise = Real(64) * Real(es.values.size()) * std::numeric_limits<Real>::epsilon() * scale;
  RVector<Real> out = es.values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) <= noise) out(i) = 0;
  }
  return out;
}

template <typename Real>
CMatrix<Real> from_spectrum(const CMatrix<Real>& vectors, const RVector<Real>& values) {
  CMatrix<Real> out = vectors * values.template cast<std::complex<Real>>().asDiagonal() * vectors.adjoint();
  return symmetrized(out);
}

}  // namespace detail

template <typename Real>
CMatrix<Real> sqrt_psd(const CMatrix<Real>& a, const NumericConfig& cfg = {}) {
  const auto es = eig_hermitian(a);
  RVector<Real> vals = detail::clipped_spectrum(es, cfg, "sqrt_psd");
  vals = vals.cwiseSqrt();
  return detail::from_spectrum(es.vectors, vals);
}

/// Pseudo-inverse of a PSD matrix; eigenvalues at or below tol.rank * scale
/// count as zero.
template <typename Real>
CMatrix<Real> pinv_psd(const CMatrix<Real>& a, const NumericConfig& cfg = {}) {
  const auto es = eig_hermitian(a);
  RVector<Real> vals = detail::clipped_spectrum(es, cfg, "pinv_psd");
  const Real cut = Real(cfg.rank) * es.scale();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = vals(i) > cut ? Real(1) / vals(i) : Real(0);
  return detail::from_spectrum(es.vectors, vals);
}

/// Orthonormal basis (as columns) of the numerical support of a PSD matrix.
/// The cutoff is tol.rank * max(largest |eigenvalue|, scale); pass the scale
/// of the inputs when A is itself a derived quantity that may vanish.
template <typename Real>
CMatrix<Real> support_basis(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  const auto es = eig_hermitian(a);
  detail::clipped_spectrum(es, cfg, "support_basis", scale);
  const Real cut = Real(cfg.rank) * std::max(es.scale(), scale);
  Eigen::Index k = 0;
  while (k < es.values.size() && es.values(k) > cut) ++k;
  return es.vectors.leftCols(k);
}

/// Orthonormal basis of the orthogonal complement of the support.
template <typename Real>
CMatrix<Real> kernel_basis(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  const auto es = eig_hermitian(a);
  detail::clipped_spectrum(es, cfg, "kernel_basis", scale);
  const Real cut = Real(cfg.rank) * std::max(es.scale(), scale);
  Eigen::Index k = 0;
  while (k < es.values.size() && es.values(k) > cut) ++k;
  return es.vectors.rightCols(es.values.size() - k);
}

template <typename Real>
Eigen::Index numerical_rank(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  return support_basis(a, cfg, scale).cols();
}

template <typename Real>
CMatrix<Real> support_projector(const CMatrix<Real>& a, const NumericConfig& cfg = {}, Real scale = 0) {
  const CMatrix<Real> basis = support_basis(a, cfg, scale);
  return symmetrized(CMatrix<Real>(basis * basis.adjoint()));
}

/// rk(A) + rk(B) == rk(A + B): the supports of two PSD matrices intersect
/// trivially.
template <typename Real>
bool rank_additive(const CMatrix<Real>& a, const CMatrix<Real>& b, const NumericConfig& cfg = {}) {
  return numerical_rank(a, cfg) + numerical_rank(b, cfg) == numerical_rank(CMatrix<Real>(a + b), cfg);
}

/// A = |A| V with |A| = sqrt(A A^dagger).
template <typename Real>
struct Polar {
  CMatrix<Real> abs;
  CMatrix<Real> unitary;
  RVector<Real> singular_values;
};

/// Polar decomposition from the SVD A = X S Y^dagger: |A| = X S X^dagger and
/// V = X Y^dagger. Singular vectors are paired by index including the zero
/// singular values, so V is a full unitary even when A is rank-deficient.
template <typename Real>
Polar<Real> polar_decompose(const CMatrix<Real>& a) {
  require_square(a, "polar_decompose");
  Eigen::JacobiSVD<CMatrix<Real>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "SVD did not converge");
  }
  const CMatrix<Real>& x = svd.matrixU();
  const CMatrix<Real>& y = svd.matrixV();
  Polar<Real> out;
  out.singular_values = svd.singularValues();
  out.abs = detail::from_spectrum(x, out.singular_values);
  out.unitary = x * y.adjoint();
  return out;
}

template <typename Real>
Real trace_norm(const CMatrix<Real>& a) {
  require_square(a, "trace_norm");
  Eigen::JacobiSVD<CMatrix<Real>> svd(a);
  if (svd.info() != Eigen::Success) {
    throw Error(Errc::ConvergenceFailure, "SVD did not converge");
  }
  return svd.singularValues().sum();
}

/// A : B = A (A + B)^+ B. Its support is the intersection of the supports.
template <typename Real>
CMatrix<Real> parallel_add(const CMatrix<Real>& a, const CMatrix<Real>& b, const NumericConfig& cfg = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::InvalidArgument, "parallel_add: dimension mismatch");
  }
  if (!is_psd(a, cfg) || !is_psd(b, cfg)) {
    throw Error(Errc::NotPsd, "parallel_add: arguments must be PSD");
  }
  const CMatrix<Real> sum = a + b;
  const CMatrix<Real> out = a * pinv_psd(sum, cfg) * b;
  return hermitize(out, cfg, max_abs(sum));
}

template <typename Real>
std::complex<Real> trace_product(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  // Tr(AB) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace matlin
}  // namespace usdkit
