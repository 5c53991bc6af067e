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

#include "usdkit/simulate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "usdkit/seed.hpp"

namespace usdkit::simulate {

namespace {

constexpr std::int64_t kBatch = 1 << 16;
constexpr double kNegativeFloor = -1e-9;
constexpr double kClip = 1e-12;

// outcome index: 0, 1, 2 = inconclusive
using Table = std::array<std::array<double, 3>, 2>;

Table outcome_table(const UsdProblem& p, const UsdPovm& m) {
  Table t{};
  const std::array<const CMat*, 2> rho = {&p.rho0(), &p.rho1()};
  const std::array<const CMat*, 3> e = {&m.e0, &m.e1, &m.eq};
  for (std::size_t i = 0; i < 2; ++i) {
    double total = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      double v = matlin::trace_product(*e[k], *rho[i]).real();
      if (v < kNegativeFloor) {
        throw Error(Errc::NegativeProbability, "Tr(E rho) = " + std::to_string(v));
      }
      if (v < kClip) v = 0.0;
      t[i][k] = v;
      total += v;
    }
    for (auto& v : t[i]) v /= total;
  }
  return t;
}

struct Counts {
  std::int64_t n0 = 0, n1 = 0, nq = 0, err = 0;
};

Counts run_batch(const Table& t, double eta0, std::int64_t shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Counts c;
  for (std::int64_t s = 0; s < shots; ++s) {
    const int signal = unit(rng) < eta0 ? 0 : 1;
    const double u = unit(rng);
    const auto& row = t[static_cast<std::size_t>(signal)];
    int outcome = 2;
    if (u < row[0]) {
      outcome = 0;
    } else if (u < row[0] + row[1]) {
      outcome = 1;
    }
    if (outcome == 2) {
      ++c.nq;
    } else if (outcome != signal) {
      ++c.err;
    } else if (signal == 0) {
      ++c.n0;
    } else {
      ++c.n1;
    }
  }
  return c;
}

}  // namespace

SimReport run_sim(const UsdProblem& p, const UsdPovm& m, std::int64_t shots, std::uint64_t seed,
                  const NumericConfig& cfg, int threads) {
  if (shots < 1) throw Error(Errc::InvalidArgument, "shots must be at least 1");
  if (!usd::diagnose_povm(p, m, cfg).valid) {
    throw Error(Errc::InvalidPovm, "simulation needs a valid USD measurement");
  }
  const Table table = outcome_table(p, m);

  const std::int64_t batches = (shots + kBatch - 1) / kBatch;
  std::vector<Counts> counts(static_cast<std::size_t>(batches));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t b = next++; b < batches; b = next++) {
      const std::int64_t n = std::min(kBatch, shots - b * kBatch);
      counts[static_cast<std::size_t>(b)] =
          run_batch(table, p.eta0(), n, derive_seed(seed, static_cast<std::uint64_t>(b)));
    }
  };
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, batches));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }

  SimReport r;
  r.shots = shots;
  r.seed = seed;
  for (const auto& c : counts) {
    r.n0 += c.n0;
    r.n1 += c.n1;
    r.nq += c.nq;
    r.n_error += c.err;
  }
  const double n = static_cast<double>(shots);
  r.empirical_q = static_cast<double>(r.nq) / n;
  r.empirical_error_rate = static_cast<double>(r.n_error) / n;
  r.stderr_q = std::sqrt(r.empirical_q * (1.0 - r.empirical_q) / n);
  return r;
}

}  // namespace usdkit::simulate
