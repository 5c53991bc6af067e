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

#include <cstdint>

#include "usdkit/usd.hpp"

namespace usdkit {

struct SimReport {
  std::int64_t shots = 0;
  std::int64_t n0 = 0;       ///< signal 0 identified as 0
  std::int64_t n1 = 0;       ///< signal 1 identified as 1
  std::int64_t nq = 0;       ///< inconclusive
  std::int64_t n_error = 0;  ///< conclusive and wrong
  double empirical_q = 0;
  double empirical_error_rate = 0;
  double stderr_q = 0;
  std::uint64_t seed = 0;
};

namespace simulate {

/// Shots are drawn in fixed-size batches, each with its own generator seeded
/// from (seed, batch index); the counts therefore depend only on `seed` and
/// `shots`, not on how many threads run the batches.
SimReport run_sim(const UsdProblem& p, const UsdPovm& m, std::int64_t shots, std::uint64_t seed,
                  const NumericConfig& cfg = {}, int threads = 0);

}  // namespace simulate
}  // namespace usdkit
