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

#include "usdkit/reduce.hpp"

namespace usdkit::reduce {

namespace {

using matlin::max_abs;

CMat hstack(std::initializer_list<const CMat*> blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const CMat* b : blocks) cols += b->cols();
  CMat out(rows, cols);
  Eigen::Index at = 0;
  for (const CMat* b : blocks) {
    out.middleCols(at, b->cols()) = *b;
    at += b->cols();
  }
  return out;
}

enum class RemovedWeight { Fails, Succeeds };

ReductionResult identity_reduction(const UsdProblem& p, const NumericConfig& cfg) {
  ReductionResult r{p};
  r.basis_change = matlin::identity<double>(p.dim());
  r.sigma_inv = matlin::pinv_psd(CMat(p.rho0() + p.rho1()), cfg);
  return r;
}

/// Removes the given orthonormal blocks plus the kernel of the remaining
/// sum, and builds the reduced problem on what is left.
ReductionResult remove_blocks(const UsdProblem& p, const CMat& common, const CMat& t0, const CMat& t1,
                              RemovedWeight removed, const NumericConfig& cfg) {
  const Eigen::Index d = p.dim();
  const CMat sigma = p.rho0() + p.rho1();
  const double scale = matlin::eig_hermitian(sigma).scale();

  CMat removed_proj = common * common.adjoint() + t0 * t0.adjoint() + t1 * t1.adjoint();
  const CMat rest = matlin::kernel_basis(matlin::symmetrized(removed_proj), cfg, 1.0);

  // Split the rest into the span of the compressed sum and its kernel.
  const CMat sigma_rest = matlin::symmetrized(CMat(rest.adjoint() * sigma * rest));
  const CMat keep_local = matlin::support_basis(sigma_rest, cfg, scale);
  const CMat null_local = matlin::kernel_basis(sigma_rest, cfg, scale);
  const CMat keep = rest * keep_local;
  const CMat null = rest * null_local;

  const CMat c0 = matlin::symmetrized(CMat(keep.adjoint() * p.rho0() * keep));
  const CMat c1 = matlin::symmetrized(CMat(keep.adjoint() * p.rho1() * keep));
  const double w0 = c0.trace().real();
  const double w1 = c1.trace().real();
  if (keep.cols() == 0 || w0 <= cfg.equality || w1 <= cfg.equality) {
    throw Error(Errc::FullyOverlapping, "a state has no weight outside the removed subspace");
  }

  const double retained = p.eta0() * w0 + p.eta1() * w1;
  const double eta0 = p.eta0() * w0 / retained;
  auto reduced = UsdProblem::make(CMat(c0 / w0), CMat(c1 / w1), eta0, 1.0 - eta0, cfg);

  ReductionResult r{std::move(reduced)};
  r.common_dim = common.cols();
  r.trimmed0 = t0.cols();
  r.trimmed1 = t1.cols();
  r.null_dim = null.cols();
  r.basis_change = hstack({&common, &t0, &t1, &keep, &null}, d);
  r.sigma_inv = matlin::pinv_psd(CMat(r.reduced.rho0() + r.reduced.rho1()), cfg);
  r.weight0 = w0;
  r.weight1 = w1;
  r.retained_prior = retained;
  r.failure_offset = removed == RemovedWeight::Fails ? p.eta0() * (1.0 - w0) + p.eta1() * (1.0 - w1) : 0.0;
  return r;
}

}  // namespace

bool rank_sum_check(const UsdProblem& p, const NumericConfig& cfg) {
  return matlin::rank_additive(p.rho0(), p.rho1(), cfg);
}

CMat common_subspace(const UsdProblem& p, const NumericConfig& cfg) {
  const CMat sigma = p.rho0() + p.rho1();
  const double scale = matlin::eig_hermitian(sigma).scale();
  return matlin::support_projector(matlin::parallel_add(p.rho0(), p.rho1(), cfg), cfg, scale);
}

ReductionResult split_common(const UsdProblem& p, const NumericConfig& cfg) {
  const CMat common = matlin::support_basis(common_subspace(p, cfg), cfg, 1.0);
  const Eigen::Index span = matlin::numerical_rank(CMat(p.rho0() + p.rho1()), cfg);
  if (common.cols() == 0 && span == p.dim()) return identity_reduction(p, cfg);
  const CMat none(p.dim(), 0);
  return remove_blocks(p, common, none, none, RemovedWeight::Fails, cfg);
}

ReductionResult orthogonal_trim(const UsdProblem& p, const NumericConfig& cfg) {
  if (!rank_sum_check(p, cfg)) {
    throw Error(Errc::OverlappingSupports, "orthogonal_trim needs supports that intersect trivially");
  }
  const Eigen::Index d = p.dim();
  const CMat id = matlin::identity<double>(d);
  const CMat p0 = matlin::support_projector(p.rho0(), cfg);
  const CMat p1 = matlin::support_projector(p.rho1(), cfg);
  const CMat t0 = matlin::support_basis(matlin::parallel_add(p0, CMat(id - p1), cfg), cfg, 1.0);
  const CMat t1 = matlin::support_basis(matlin::parallel_add(p1, CMat(id - p0), cfg), cfg, 1.0);

  const Eigen::Index r0 = matlin::numerical_rank(p.rho0(), cfg);
  const Eigen::Index r1 = matlin::numerical_rank(p.rho1(), cfg);
  if (t0.cols() == r0 || t1.cols() == r1) {
    // Orthogonal supports: nothing is left to reduce to.
    auto r = identity_reduction(p, cfg);
    r.orthogonal = true;
    return r;
  }
  if (t0.cols() == 0 && t1.cols() == 0 && r0 + r1 == d) return identity_reduction(p, cfg);
  const CMat none(d, 0);
  return remove_blocks(p, none, t0, t1, RemovedWeight::Succeeds, cfg);
}

ReductionResult reduce_problem(const UsdProblem& p, const NumericConfig& cfg) {
  const ReductionResult first = split_common(p, cfg);
  ReductionResult second = orthogonal_trim(first.reduced, cfg);

  const Eigen::Index d = p.dim();
  const Eigen::Index c = first.common_dim;
  const Eigen::Index k1 = first.reduced_dim();
  const CMat& b1 = first.basis_change;
  const CMat common = b1.leftCols(c);
  const CMat inner = b1.middleCols(c, k1) * second.basis_change;  // d x k1
  const CMat outer_null = b1.rightCols(first.null_dim);

  ReductionResult out = std::move(second);
  out.common_dim = c;
  out.null_dim = first.null_dim + out.null_dim;
  out.basis_change = hstack({&common, &inner, &outer_null}, d);
  out.weight0 = first.weight0 * out.weight0;
  out.weight1 = first.weight1 * out.weight1;
  out.failure_offset = first.failure_offset + first.retained_prior * out.failure_offset;
  out.retained_prior = first.retained_prior * out.retained_prior;
  return out;
}

double certify_corollary1(const ReductionResult& r, const NumericConfig& cfg) {
  const CMat sigma_inv = r.sigma_inv.size() ? r.sigma_inv
                                            : matlin::pinv_psd(CMat(r.reduced.rho0() + r.reduced.rho1()), cfg);
  return max_abs(CMat(r.reduced.rho0() * sigma_inv * r.reduced.rho1()));
}

UsdPovm lift_povm(const ReductionResult& r, const UsdPovm& m) {
  const Eigen::Index d = r.basis_change.rows();
  const Eigen::Index k = r.reduced_dim();
  if (m.e0.rows() != k) throw Error(Errc::InvalidPovm, "lift_povm: measurement does not match the reduced problem");

  // The basis may hold blocks in the order common | inner | null, where
  // inner = trimmed0 | trimmed1 | reduced | inner-null (see reduce_problem).
  const Eigen::Index c = r.common_dim;
  const Eigen::Index t0 = r.trimmed0;
  const Eigen::Index t1 = r.trimmed1;

  CMat b0 = CMat::Zero(d, d), b1 = CMat::Zero(d, d), bq = CMat::Zero(d, d);
  Eigen::Index at = 0;
  bq.block(at, at, c, c).setIdentity();
  at += c;
  b0.block(at, at, t0, t0).setIdentity();
  at += t0;
  b1.block(at, at, t1, t1).setIdentity();
  at += t1;
  b0.block(at, at, k, k) = m.e0;
  b1.block(at, at, k, k) = m.e1;
  bq.block(at, at, k, k) = m.eq;
  at += k;
  b0.block(at, at, d - at, d - at).setIdentity();

  const CMat& u = r.basis_change;
  UsdPovm out;
  out.e0 = matlin::symmetrized(CMat(u * b0 * u.adjoint()));
  out.e1 = matlin::symmetrized(CMat(u * b1 * u.adjoint()));
  out.eq = matlin::symmetrized(CMat(u * bq * u.adjoint()));
  return out;
}

}  // namespace usdkit::reduce
