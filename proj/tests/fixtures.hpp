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

// Problem generators shared by the unit and acceptance tests.

#pragma once

#include <cmath>
#include <random>

#include "usdkit/reduce.hpp"
#include "usdkit/states.hpp"
#include "usdkit/usd.hpp"

namespace usdkit::testing {

/// Amplitudes of the four mod-4 photon-number classes of a coherent state
/// with x = |alpha|^2 / 2. Only used to cross-check coherent_fidelity.
inline CoherentCoeffs coherent_coeffs(double x) {
  const double e = std::exp(-x);
  return {Complex(std::sqrt(e * (std::cosh(x) + std::cos(x)) / 2), 0),
          Complex(std::sqrt(e * (std::sinh(x) + std::sin(x)) / 2), 0),
          Complex(std::sqrt(e * (std::cosh(x) - std::cos(x)) / 2), 0),
          Complex(std::sqrt(e * (std::sinh(x) - std::sin(x)) / 2), 0)};
}

/// The coherent pair at |alpha|^2 = 2.
inline StatePair coherent_representative() { return states::coherent_qkd_pair(coherent_coeffs(1.0)); }

/// Places a (k x k) block at `at` of a zero (d x d) matrix.
inline CMat embed(const CMat& block, Eigen::Index d, Eigen::Index at) {
  CMat m = CMat::Zero(d, d);
  m.block(at, at, block.rows(), block.cols()) = block;
  return m;
}

inline CMat conjugate(const CMat& u, const CMat& m) { return u * m * u.adjoint(); }

/// rho1 uniform on a k-dim subspace P and rho0 with P rho0 P = a^2 P / k,
/// so that F1 = F rho1 with F = a. Rotated by a random unitary.
inline StatePair projective_first_regime(Eigen::Index k, double a, std::uint64_t seed) {
  const Eigen::Index d = 2 * k;
  const double b = std::sqrt(1.0 - a * a);
  const CMat mix = states::random_unitary(k, seed ^ 0x9e37);
  CMat rho0 = CMat::Zero(d, d);
  for (Eigen::Index j = 0; j < k; ++j) {
    CVec phi = CVec::Zero(d);
    phi(j) = a;
    phi.tail(k) = b * mix.col(j);
    rho0 += phi * phi.adjoint() / static_cast<double>(k);
  }
  CMat rho1 = CMat::Zero(d, d);
  rho1.topLeftCorner(k, k) = CMat::Identity(k, k) / static_cast<double>(k);
  const CMat u = states::random_unitary(d, seed);
  return {DensityMatrix::from_matrix(conjugate(u, rho0)), DensityMatrix::from_matrix(conjugate(u, rho1))};
}

/// Block-diagonal pair: a generic non-overlapping pair on `inner` dims
/// (ranks inner/2 each, so supports intersect trivially) plus a shared
/// full-rank block of dimension `common`.
struct PlantedPair {
  StatePair pair;
  Eigen::Index common;
};

inline PlantedPair planted_common(Eigen::Index inner, Eigen::Index common, std::uint64_t seed) {
  const Eigen::Index d = inner + common;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.3, 0.8);
  const double w0 = common ? w(rng) : 1.0;
  const double w1 = common ? w(rng) : 1.0;
  const CMat a0 = states::random_density(inner, inner / 2, seed + 1).matrix();
  const CMat a1 = states::random_density(inner, inner - inner / 2, seed + 2).matrix();
  CMat rho0 = embed(CMat(w0 * a0), d, 0);
  CMat rho1 = embed(CMat(w1 * a1), d, 0);
  if (common) {
    rho0 += embed(CMat((1 - w0) * states::random_density(common, common, seed + 3).matrix()), d, inner);
    rho1 += embed(CMat((1 - w1) * states::random_density(common, common, seed + 4).matrix()), d, inner);
  }
  const CMat u = states::random_unitary(d, seed + 5);
  return {{DensityMatrix::from_matrix(conjugate(u, rho0)), DensityMatrix::from_matrix(conjugate(u, rho1))}, common};
}

/// Random pair on `dim` with ranks r0 + r1 <= dim (supports intersect
/// trivially with probability one).
inline StatePair random_disjoint(Eigen::Index dim, Eigen::Index r0, Eigen::Index r1, std::uint64_t seed) {
  return {states::random_density(dim, r0, seed), states::random_density(dim, r1, seed + 7919)};
}

}  // namespace usdkit::testing
