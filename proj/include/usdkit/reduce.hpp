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
 * Reductions of a two-state problem to one whose supports intersect
 * trivially and span the space with equal ranks.
 *
 * A reduction removes subspaces on which the outcome is forced: the common
 * support (always inconclusive), and the parts of one support orthogonal to
 * the other (always conclusive). What remains is re-expressed in an
 * orthonormal basis of the leftover block, states renormalized and priors
 * reweighted by the retained weight of each state.
 */

#pragma once

#include "usdkit/usd.hpp"

namespace usdkit {

struct ReductionResult {
  explicit ReductionResult(UsdProblem p) : reduced(std::move(p)) {}

  UsdProblem reduced;
  Eigen::Index common_dim = 0;
  Eigen::Index trimmed0 = 0;  ///< dim of S0 intersected with S1-perp
  Eigen::Index trimmed1 = 0;  ///< dim of S1 intersected with S0-perp
  Eigen::Index null_dim = 0;  ///< directions outside span(rho0 + rho1)

  /// Columns are an orthonormal basis of the original space ordered as
  /// [common | trimmed0 | trimmed1 | reduced | null]; the reduced problem
  /// lives on the `reduced` block.
  CMat basis_change;

  /// Pseudo-inverse of rho0' + rho1'.
  CMat sigma_inv;

  double weight0 = 1;  ///< Tr of rho0 retained in the reduced block
  double weight1 = 1;

  /// Q_original = failure_offset + retained_prior * Q_reduced for measurements
  /// lifted by lift_povm.
  double failure_offset = 0;
  double retained_prior = 1;

  /// Set by orthogonal_trim when the supports are orthogonal outright; the
  /// problem is then returned untouched.
  bool orthogonal = false;

  Eigen::Index reduced_dim() const { return reduced.dim(); }
  double lift_failure(double q_reduced) const { return failure_offset + retained_prior * q_reduced; }
};

namespace reduce {

/// rk(rho0) + rk(rho1) == rk(rho0 + rho1).
bool rank_sum_check(const UsdProblem& p, const NumericConfig& cfg = {});

/// Projector onto the intersection of the supports.
CMat common_subspace(const UsdProblem& p, const NumericConfig& cfg = {});

/// Removes the common support. Throws FullyOverlapping if a state lies
/// entirely inside it.
ReductionResult split_common(const UsdProblem& p, const NumericConfig& cfg = {});

/// Removes S0 & S1-perp and S1 & S0-perp. Requires rank_sum_check.
ReductionResult orthogonal_trim(const UsdProblem& p, const NumericConfig& cfg = {});

/// split_common followed by orthogonal_trim, composed into one result.
ReductionResult reduce_problem(const UsdProblem& p, const NumericConfig& cfg = {});

/// |rho0' Sigma'^+ rho1'|_max on the reduced problem.
double certify_corollary1(const ReductionResult& r, const NumericConfig& cfg = {});

/// Embeds a measurement on the reduced problem back into the original space:
/// common block to E?, trimmed blocks to their conclusive outcomes and the
/// null block to E0.
UsdPovm lift_povm(const ReductionResult& r, const UsdPovm& reduced_povm);

}  // namespace reduce
}  // namespace usdkit
