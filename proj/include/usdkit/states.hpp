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

#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "usdkit/usd.hpp"

namespace usdkit {

/// Amplitudes c0..c3 of the four-dimensional coherent-state representation.
/// Must satisfy sum |c_i|^2 = 1.
using CoherentCoeffs = std::array<Complex, 4>;

/// A generated pair of states, priors still to be chosen.
struct StatePair {
  DensityMatrix rho0;
  DensityMatrix rho1;

  UsdProblem with_priors(double eta0, double eta1, const NumericConfig& cfg = {}) const {
    return UsdProblem::make(rho0, rho1, eta0, eta1, cfg);
  }
};

namespace states {

/// Two pure qubit states with <psi0|psi1> = overlap * exp(i phase).
StatePair pure_pair(double overlap, double phase = 0.0);

/// The rank-two state built from c (nonzero entries at (0,0), (1,1), (2,2),
/// (3,3) and the (0,2), (1,3) coherences), and its image under
/// diag(-1, -1, 1, 1).
StatePair coherent_qkd_pair(const CoherentCoeffs& c, const NumericConfig& cfg = {});

/// The state coherent_qkd_pair would use as rho0.
CMat coherent_rho0(const CoherentCoeffs& c, const NumericConfig& cfg = {});

/// exp(-x/2) (|cos(x/2)| + |sin(x/2)|) with x = |alpha|^2.
double coherent_fidelity(double alpha_sq);

/// Hadamard-block involution used by counterexample_pair.
CMat hadamard_blocks();

/// c = (sqrt .1, sqrt .4, sqrt .3, sqrt .2) paired through hadamard_blocks():
/// a pair whose bounds are not attained at equal priors.
StatePair counterexample_pair();

/// (rho0, U rho0 U^dagger) for an involution U (U^2 = 1).
StatePair gu_pair(const DensityMatrix& rho0, const CMat& u, const NumericConfig& cfg = {});

/// Ginibre-distributed state of given rank, normalized to trace one.
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

/// Haar-distributed unitary.
CMat random_unitary(Eigen::Index dim, std::uint64_t seed);

}  // namespace states
}  // namespace usdkit
