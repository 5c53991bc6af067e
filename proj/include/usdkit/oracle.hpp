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
 * Brute-force search over unambiguous measurements, independent of the
 * closed-form construction in usd.hpp.
 *
 * E0 = K1 G0 K1^dagger and E1 = K0 G1 K0^dagger, where K_i is an orthonormal
 * basis of the kernel of rho_i and G_i = B_i B_i^dagger for free complex
 * factors B_i. This enforces Tr(E0 rho1) = Tr(E1 rho0) = 0 by construction.
 * The pair is then divided by the Schatten p-norm of E0 + E1, which bounds
 * the largest eigenvalue from above, so E? = 1 - E0 - E1 is PSD for every
 * parameter value. The p-norm is a smooth stand-in for the largest
 * eigenvalue; p is doubled phase by phase so the search ends on the exact
 * feasible boundary. Each phase runs a random-direction pattern search with
 * expanding and shrinking steps.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "usdkit/usd.hpp"

namespace usdkit {

struct OracleConfig {
  int restarts = 32;
  int max_iterations = 5000;
  double step_tolerance = 1e-9;
  std::uint64_t seed = 0x5eed;
  /// 0 means one worker per hardware thread. Results do not depend on it.
  int threads = 0;
  /// Largest Hilbert-space dimension accepted.
  Eigen::Index max_dim = 8;
};

struct OracleResult {
  double best_q = 1;
  UsdPovm best_povm;
  double q_bound = 0;
  double gap_to_bound = 0;  ///< best_q - q_bound
  bool converged = false;
  std::vector<double> restart_q;  ///< best Q of each restart, in restart order
  int evaluations = 0;
};

namespace oracle {

/// Random valid USD measurement with E0 + E1 scaled so that its largest
/// eigenvalue equals `scale` (in [0, 1]). Scale 0 gives E? = 1.
UsdPovm random_usd_povm(const UsdProblem& p, std::uint64_t seed, double scale, const NumericConfig& cfg = {});

/// As above with the scale drawn uniformly from [0, 1].
UsdPovm random_usd_povm(const UsdProblem& p, std::uint64_t seed, const NumericConfig& cfg = {});

/// Minimizes Q over USD measurements. Requires non-overlapping supports and
/// dim <= cfg.max_dim.
OracleResult optimize_usd(const UsdProblem& p, const OracleConfig& cfg = {}, const NumericConfig& num = {});

/// Seed of restart i: a SplitMix64 stream keyed on the base seed.
std::uint64_t restart_seed(std::uint64_t base, std::uint64_t index);

}  // namespace oracle
}  // namespace usdkit
