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

#include <doctest.h>

#include "fixtures.hpp"
#include "usdkit/reduce.hpp"

using namespace usdkit;
using matlin::max_abs;
using doctest::Approx;

namespace {

CMat diag(std::initializer_list<double> v) {
  RVec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("rank sum check") {
  CHECK(reduce::rank_sum_check(UsdProblem::make(diag({1, 0}), diag({0, 1}), 0.5, 0.5)));
  const auto s = states::random_density(3, 2, 1);
  CHECK_FALSE(reduce::rank_sum_check(UsdProblem::make(s, s, 0.5, 0.5)));
}

TEST_CASE("common subspace") {
  const auto s = states::random_density(3, 3, 2);
  CHECK(matlin::numerical_rank(reduce::common_subspace(UsdProblem::make(s, s, 0.5, 0.5))) == 3);

  const auto disjoint = testing::random_disjoint(4, 2, 2, 5).with_priors(0.5, 0.5);
  CHECK(max_abs(reduce::common_subspace(disjoint)) < 1e-9);

  // Both supports contain e1 and nothing else in common.
  CMat a = diag({0.5, 0.5, 0});
  CMat b = CMat::Zero(3, 3);
  b(1, 1) = 0.5;
  b(2, 2) = 0.4;
  b(0, 2) = b(2, 0) = 0.2;
  b(0, 0) = 0.1;
  const auto p = UsdProblem::make(a, b, 0.5, 0.5);
  const CMat c = reduce::common_subspace(p);
  CHECK(matlin::numerical_rank(c) == 1);
  CHECK(std::abs(c(1, 1) - 1.0) < 1e-9);
}

TEST_CASE("split common") {
  const auto disjoint = testing::random_disjoint(4, 2, 2, 5).with_priors(0.5, 0.5);
  const auto r = reduce::split_common(disjoint);
  CHECK(r.common_dim == 0);
  CHECK(r.reduced_dim() == 4);

  const auto s = states::random_density(3, 2, 1);
  CHECK_THROWS_AS(reduce::split_common(UsdProblem::make(s, s, 0.5, 0.5)), Error);

  // rho_i = sigma / 2 (+) tau_i / 2 with tau0 orthogonal to tau1.
  const CMat rho0 = diag({0.3, 0.2, 0.5, 0});
  const CMat rho1 = diag({0.3, 0.2, 0, 0.5});
  const auto block = reduce::split_common(UsdProblem::make(rho0, rho1, 0.4, 0.6));
  CHECK(block.common_dim == 2);
  CHECK(block.reduced_dim() == 2);
  CHECK(block.weight0 == Approx(0.5));
  CHECK(block.failure_offset == Approx(0.5));
  CHECK(block.reduced.eta0() == Approx(0.4));
  CHECK(usd::fidelity_data(block.reduced).fidelity == Approx(0.0));
}

TEST_CASE("orthogonal trim") {
  const auto pure = states::pure_pair(0.5).with_priors(0.5, 0.5);
  const auto r = reduce::orthogonal_trim(pure);
  CHECK(r.trimmed0 == 0);
  CHECK(r.trimmed1 == 0);

  // |2> lies in S0 and is orthogonal to S1.
  CMat v(3, 1);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0;
  const CMat rho0 = diag({0.5, 0, 0.5});
  const CMat rho1 = v * v.adjoint();
  const auto t = reduce::orthogonal_trim(UsdProblem::make(rho0, rho1, 0.5, 0.5));
  CHECK(t.trimmed0 == 1);
  CHECK(t.trimmed1 == 0);
  CHECK(t.reduced_dim() == 2);
  CHECK(t.weight0 == Approx(0.5));

  const auto orth = reduce::orthogonal_trim(UsdProblem::make(diag({1, 0}), diag({0, 1}), 0.5, 0.5));
  CHECK(orth.orthogonal);
  CHECK(reduce::certify_corollary1(orth) < 1e-12);
}

TEST_CASE("reduced problem lifts back") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto planted = testing::planted_common(4, 1 + seed % 2, 300 + seed);
    const auto p = planted.pair.with_priors(0.45, 0.55);
    const auto r = reduce::reduce_problem(p);
    CHECK(r.common_dim == planted.common);
    CHECK(reduce::certify_corollary1(r) <= 1e-9);

    if (!usd::check_saturation(r.reduced).saturated) continue;
    const UsdPovm lifted = reduce::lift_povm(r, usd::build_povm(r.reduced));
    const auto diag = usd::diagnose_povm(p, lifted);
    CHECK(diag.valid);
    const double q = usd::failure_probs(p, lifted).q;
    CHECK(q == Approx(r.lift_failure(usd::lower_bound(r.reduced).q_bound)).epsilon(1e-8));
  }
}

TEST_CASE("support intersection certificate") {
  const auto coh = testing::coherent_representative().with_priors(0.5, 0.5);
  CHECK(reduce::certify_corollary1(reduce::reduce_problem(coh)) <= 1e-9);

  const auto s0 = states::random_density(3, 2, 11);
  const auto s1 = states::random_density(3, 2, 12);
  ReductionResult overlapping(UsdProblem::make(s0, s1, 0.5, 0.5));
  CHECK(reduce::certify_corollary1(overlapping) > 1e-3);
}
