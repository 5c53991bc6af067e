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

#include <numbers>

#include "fixtures.hpp"
#include "usdkit/reduce.hpp"

using namespace usdkit;
using matlin::max_abs;
using doctest::Approx;

TEST_CASE("pure pair") {
  const auto orth = states::pure_pair(0.0);
  CHECK(matlin::trace_product(orth.rho0.matrix(), orth.rho1.matrix()).real() == Approx(0.0));
  const auto same = states::pure_pair(1.0, 0.7);
  CHECK(max_abs(CMat(same.rho0.matrix() - same.rho1.matrix())) < 1e-12);
  CHECK(usd::fidelity_data(states::pure_pair(0.8, 2.0).with_priors(0.5, 0.5)).fidelity == Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(states::pure_pair(1.2), Error);
}

TEST_CASE("coherent pair structure") {
  const CoherentCoeffs c = {Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5)};
  const auto pair = states::coherent_qkd_pair(c);
  const CMat& a = pair.rho0.matrix();
  const CMat& b = pair.rho1.matrix();
  CHECK(a.trace().real() == Approx(1.0));
  CHECK(b.trace().real() == Approx(1.0));
  CHECK(a(0, 2) == Complex(0.25, 0.0));
  CHECK(b(0, 2) == Complex(-0.25, 0.0));
  CHECK(b(1, 3) == -a(1, 3));
  CHECK(b.diagonal().isApprox(a.diagonal()));

  const CoherentCoeffs bad = {Complex(1.0), Complex(1.0), Complex(0.0), Complex(0.0)};
  CHECK_THROWS_AS(states::coherent_qkd_pair(bad), Error);

  const auto r = reduce::orthogonal_trim(testing::coherent_representative().with_priors(0.5, 0.5));
  CHECK(r.trimmed0 == 0);
  CHECK(r.trimmed1 == 0);
}

TEST_CASE("coherent fidelity closed form") {
  CHECK(states::coherent_fidelity(0.0) == Approx(1.0));
  CHECK(states::coherent_fidelity(std::numbers::pi) == Approx(std::exp(-std::numbers::pi / 2)).epsilon(1e-12));
  CHECK(states::coherent_fidelity(std::numbers::pi) == Approx(0.2079).epsilon(1e-3));
  for (double a2 : {0.3, 1.0, 2.0, 3.5, 6.0}) {
    const auto p = states::coherent_qkd_pair(testing::coherent_coeffs(a2 / 2)).with_priors(0.5, 0.5);
    CHECK(std::abs(usd::fidelity_data(p).fidelity - states::coherent_fidelity(a2)) <= 1e-8);
  }
}

TEST_CASE("counterexample pair") {
  const auto w = states::hadamard_blocks();
  CHECK(matlin::is_unitary(w));
  CHECK(max_abs(CMat(w * w - CMat::Identity(4, 4))) < 1e-12);

  const auto p = states::counterexample_pair().with_priors(0.5, 0.5);
  CHECK(reduce::rank_sum_check(p));
  CHECK(usd::fidelity_data(p).fidelity == Approx(0.94655).epsilon(1e-4));
  CHECK_FALSE(usd::check_saturation(p).saturated);
}

TEST_CASE("pair from an involution") {
  const auto rho = states::random_density(4, 2, 8);
  CHECK_THROWS_AS(states::gu_pair(rho, states::random_unitary(4, 1)), Error);
  CHECK_THROWS_AS(states::gu_pair(rho, CMat(2.0 * CMat::Identity(4, 4))), Error);
  const auto pair = states::gu_pair(rho, states::hadamard_blocks());
  const CMat& w = states::hadamard_blocks();
  CHECK(max_abs(CMat(pair.rho1.matrix() - w * rho.matrix() * w.adjoint())) < 1e-12);
}

TEST_CASE("random generators are seeded") {
  const auto a = states::random_density(5, 3, 42);
  const auto b = states::random_density(5, 3, 42);
  CHECK(a.matrix() == b.matrix());
  CHECK(matlin::numerical_rank(a.matrix()) == 3);
  CHECK(matlin::is_unitary(states::random_unitary(6, 3)));
  CHECK(states::random_unitary(6, 3) == states::random_unitary(6, 3));
}
