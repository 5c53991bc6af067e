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

#include "usdkit/states.hpp"

#include <cmath>
#include <random>

namespace usdkit::states {

namespace {

CMat projector(const CVec& v) { return v * v.adjoint(); }

CMat ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

StatePair pure_pair(double overlap, double phase) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw Error(Errc::InvalidArgument, "overlap must lie in [0, 1]");
  }
  CVec psi0(2), psi1(2);
  psi0 << 1.0, 0.0;
  psi1 << overlap * std::polar(1.0, phase), std::sqrt(1.0 - overlap * overlap);
  return {DensityMatrix::from_matrix(projector(psi0)), DensityMatrix::from_matrix(projector(psi1))};
}

CMat coherent_rho0(const CoherentCoeffs& c, const NumericConfig& cfg) {
  double norm = 0;
  for (const auto& ci : c) norm += std::norm(ci);
  if (std::abs(norm - 1.0) > cfg.equality) {
    throw Error(Errc::BadNormalization, "sum of |c_i|^2 is " + std::to_string(norm));
  }
  CMat rho = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) rho(i, i) = std::norm(c[i]);
  rho(0, 2) = c[0] * std::conj(c[2]);
  rho(2, 0) = c[2] * std::conj(c[0]);
  rho(1, 3) = c[1] * std::conj(c[3]);
  rho(3, 1) = c[3] * std::conj(c[1]);
  return rho;
}

StatePair coherent_qkd_pair(const CoherentCoeffs& c, const NumericConfig& cfg) {
  CMat u = CMat::Zero(4, 4);
  u.diagonal() << -1.0, -1.0, 1.0, 1.0;
  return gu_pair(DensityMatrix::from_matrix(coherent_rho0(c, cfg), cfg), u, cfg);
}

double coherent_fidelity(double alpha_sq) {
  if (!(alpha_sq >= 0.0)) throw Error(Errc::InvalidArgument, "|alpha|^2 must be non-negative");
  const double h = alpha_sq / 2.0;
  return std::exp(-h) * (std::abs(std::cos(h)) + std::abs(std::sin(h)));
}

CMat hadamard_blocks() {
  const double s = 1.0 / std::sqrt(2.0);
  CMat w(4, 4);
  w << s, s, 0, 0,
       s, -s, 0, 0,
       0, 0, s, s,
       0, 0, s, -s;
  return w;
}

StatePair counterexample_pair() {
  const CoherentCoeffs c = {std::sqrt(0.1), std::sqrt(0.4), std::sqrt(0.3), std::sqrt(0.2)};
  return gu_pair(DensityMatrix::from_matrix(coherent_rho0(c)), hadamard_blocks());
}

StatePair gu_pair(const DensityMatrix& rho0, const CMat& u, const NumericConfig& cfg) {
  if (u.rows() != rho0.dim() || u.cols() != rho0.dim()) {
    throw Error(Errc::InvalidArgument, "gu_pair: dimension mismatch");
  }
  if (!matlin::is_unitary(u, cfg)) throw Error(Errc::NotUnitary, "gu_pair: U is not unitary");
  const CMat sq = u * u;
  if (matlin::max_abs(CMat(sq - matlin::identity<double>(u.rows()))) > cfg.unitary) {
    throw Error(Errc::NotInvolution, "gu_pair: U^2 differs from the identity");
  }
  return {rho0, DensityMatrix::from_matrix(CMat(u * rho0.matrix() * u.adjoint()), cfg)};
}

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(Errc::InvalidArgument, "random_density: need 1 <= rank <= dim");
  }
  std::mt19937_64 rng(seed);
  const CMat g = ginibre(dim, rank, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(matlin::symmetrized(rho));
}

CMat random_unitary(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMat g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace usdkit::states
