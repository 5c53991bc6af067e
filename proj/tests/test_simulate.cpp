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
#include "usdkit/simulate.hpp"

using namespace usdkit;
using matlin::max_abs;

TEST_CASE("always-fail measurement") {
  const auto p = states::pure_pair(0.4).with_priors(0.5, 0.5);
  const UsdPovm m{CMat::Zero(2, 2), CMat::Zero(2, 2), CMat::Identity(2, 2)};
  const auto r = simulate::run_sim(p, m, 5000, 1);
  CHECK(r.empirical_q == 1.0);
  CHECK(r.n_error == 0);
  CHECK(r.nq == 5000);
}

TEST_CASE("optimal measurement concentrates") {
  const auto p = states::pure_pair(0.8).with_priors(0.5, 0.5);
  const auto r = simulate::run_sim(p, usd::build_povm(p), 100000, 7);
  CHECK(r.n0 + r.n1 + r.nq + r.n_error == r.shots);
  CHECK(r.n_error == 0);
  CHECK(std::abs(r.empirical_q - 0.8) <= 4 * r.stderr_q);
}

TEST_CASE("projective measurement concentrates") {
  const auto p = states::pure_pair(0.9).with_priors(0.8, 0.2);
  const auto od = usd::overlap_data(p);
  const UsdPovm m{CMat(CMat::Identity(2, 2) - od.p1), CMat::Zero(2, 2), od.p1};
  const auto r = simulate::run_sim(p, m, 100000, 3);
  CHECK(r.n_error == 0);
  CHECK(std::abs(r.empirical_q - (0.2 + 0.8 * od.t10)) <= 4 * r.stderr_q);
}

TEST_CASE("deterministic per seed") {
  const auto p = testing::coherent_representative().with_priors(0.5, 0.5);
  const auto m = usd::build_povm(p);
  const auto a = simulate::run_sim(p, m, 200000, 99, {}, 1);
  const auto b = simulate::run_sim(p, m, 200000, 99, {}, 4);
  CHECK(a.nq == b.nq);
  CHECK(a.n0 == b.n0);
  CHECK(a.n1 == b.n1);
  const auto c = simulate::run_sim(p, m, 200000, 100);
  CHECK(c.nq != a.nq);
}

TEST_CASE("input checks") {
  const auto p = states::pure_pair(0.4).with_priors(0.5, 0.5);
  const auto m = usd::build_povm(p);
  CHECK_THROWS_AS(simulate::run_sim(p, m, 0, 1), Error);
  const UsdPovm wrong{CMat::Identity(2, 2), CMat::Zero(2, 2), CMat::Zero(2, 2)};
  CHECK_THROWS_AS(simulate::run_sim(p, wrong, 10, 1), Error);
  const auto one = simulate::run_sim(p, m, 1, 1);
  CHECK(one.n0 + one.n1 + one.nq + one.n_error == 1);
}
