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

#include "usdkit/oracle.hpp"
#include "usdkit/seed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace usdkit::oracle {

namespace {

/// Kernel bases and compressed states shared by every restart.
struct Geometry {
  CMat k1;  ///< kernel of rho1, where E0 lives
  CMat k0;  ///< kernel of rho0, where E1 lives
  CMat a0;  ///< k1^dagger rho0 k1
  CMat a1;  ///< k0^dagger rho1 k0
  double eta0 = 0;
  double eta1 = 0;
  Eigen::Index dim = 0;

  Eigen::Index n0() const { return k1.cols(); }
  Eigen::Index n1() const { return k0.cols(); }
  Eigen::Index num_params() const { return 2 * (n0() * n0() + n1() * n1()); }
};

Geometry make_geometry(const UsdProblem& p, const NumericConfig& cfg) {
  if (!matlin::rank_additive(p.rho0(), p.rho1(), cfg)) {
    throw Error(Errc::OverlappingSupports, "oracle needs supports that intersect trivially");
  }
  Geometry g;
  g.k1 = matlin::kernel_basis(p.rho1(), cfg);
  g.k0 = matlin::kernel_basis(p.rho0(), cfg);
  g.a0 = g.k1.adjoint() * p.rho0() * g.k1;
  g.a1 = g.k0.adjoint() * p.rho1() * g.k0;
  g.eta0 = p.eta0();
  g.eta1 = p.eta1();
  g.dim = p.dim();
  return g;
}

CMat unpack(const Eigen::VectorXd& x, Eigen::Index offset, Eigen::Index n) {
  CMat b(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index at = offset + 2 * (j * n + i);
      b(i, j) = Complex(x(at), x(at + 1));
    }
  }
  return b;
}

struct Candidate {
  CMat e0;  ///< unscaled
  CMat e1;
  double gain = 0;  ///< eta0 Tr(E0 rho0) + eta1 Tr(E1 rho1), unscaled
  RVec spectrum;    ///< eigenvalues of E0 + E1, clipped at zero
};

Candidate candidate(const Geometry& g, const Eigen::VectorXd& x) {
  const CMat b0 = unpack(x, 0, g.n0());
  const CMat b1 = unpack(x, 2 * g.n0() * g.n0(), g.n1());
  const CMat g0 = b0 * b0.adjoint();
  const CMat g1 = b1 * b1.adjoint();
  Candidate c;
  c.gain = g.eta0 * matlin::trace_product(g0, g.a0).real() + g.eta1 * matlin::trace_product(g1, g.a1).real();
  c.e0 = g.k1 * g0 * g.k1.adjoint();
  c.e1 = g.k0 * g1 * g.k0.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(matlin::symmetrized(CMat(c.e0 + c.e1)), Eigen::EigenvaluesOnly);
  c.spectrum = es.eigenvalues().cwiseMax(0.0);
  return c;
}

/// Schatten p-norm of a PSD spectrum; p <= 0 means the largest eigenvalue.
double schatten(const RVec& w, double p) {
  const double top = w.size() ? w.maxCoeff() : 0.0;
  if (top <= 0.0 || p <= 0.0) return top;
  double acc = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) acc += std::pow(w(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double objective(const Geometry& g, const Eigen::VectorXd& x, double p) {
  const Candidate c = candidate(g, x);
  const double norm = schatten(c.spectrum, p);
  if (norm <= 0.0) return 1.0;
  return 1.0 - c.gain / norm;
}

UsdPovm feasible_povm(const Geometry& g, const Eigen::VectorXd& x) {
  const Candidate c = candidate(g, x);
  const double top = schatten(c.spectrum, 0.0);
  const double s = top > 0.0 ? 1.0 / top : 0.0;
  UsdPovm m;
  m.e0 = matlin::symmetrized(CMat(s * c.e0));
  m.e1 = matlin::symmetrized(CMat(s * c.e1));
  m.eq = matlin::symmetrized(CMat(matlin::identity<double>(g.dim) - m.e0 - m.e1));
  return m;
}

Eigen::VectorXd gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

struct RestartOutcome {
  double q = 1;
  UsdPovm povm;
  bool converged = false;
  int evaluations = 0;
};

RestartOutcome run_restart(const Geometry& g, const OracleConfig& cfg, std::uint64_t seed) {
  RestartOutcome out;
  const Eigen::Index n = g.num_params();
  if (n == 0) {
    // Both states have full support: only E? = 1 is unambiguous.
    out.povm = feasible_povm(g, Eigen::VectorXd(0));
    out.q = 1.0;
    out.converged = true;
    return out;
  }

  std::mt19937_64 rng(seed);
  Eigen::VectorXd x = gaussian(n, rng);
  x.normalize();

  constexpr double kFirstP = 8.0;
  constexpr double kLastP = 16384.0;
  constexpr int kDirections = 4;
  constexpr double kPhaseTolerance = 1e-6;
  int phases = 0;
  for (double p = kFirstP; p <= kLastP; p *= 2.0) ++phases;
  const int phase_budget = std::max(1, cfg.max_iterations / (phases + 1));

  double p = kFirstP;
  double step = 0.5;
  double fx = objective(g, x, p);
  ++out.evaluations;
  int in_phase = 0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    bool improved = false;
    for (int k = 0; k < kDirections && !improved; ++k) {
      Eigen::VectorXd dir = gaussian(n, rng);
      dir.normalize();
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd y = x + sign * step * dir;
        const double fy = objective(g, y, p);
        ++out.evaluations;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    step = improved ? std::min(1.0, step * 1.5) : step * 0.6;
    ++in_phase;

    // The objective is invariant under x -> c x; keep the scale fixed.
    if (it % 50 == 49) {
      x.normalize();
      fx = objective(g, x, p);
    }

    const bool last_phase = p >= kLastP;
    if (!last_phase && (step < kPhaseTolerance || in_phase >= phase_budget)) {
      p *= 2.0;
      x.normalize();
      fx = objective(g, x, p);
      step = std::max(step, 1e-3);
      in_phase = 0;
    } else if (last_phase && step < cfg.step_tolerance) {
      out.converged = true;
      break;
    }
  }

  out.povm = feasible_povm(g, x);
  const double gain = g.eta0 * matlin::trace_product(CMat(g.k1.adjoint() * out.povm.e0 * g.k1), g.a0).real() +
                      g.eta1 * matlin::trace_product(CMat(g.k0.adjoint() * out.povm.e1 * g.k0), g.a1).real();
  out.q = 1.0 - gain;
  return out;
}

}  // namespace

std::uint64_t restart_seed(std::uint64_t base, std::uint64_t index) { return derive_seed(base, index); }

UsdPovm random_usd_povm(const UsdProblem& p, std::uint64_t seed, double scale, const NumericConfig& cfg) {
  if (!(scale >= 0.0 && scale <= 1.0)) throw Error(Errc::InvalidArgument, "scale must lie in [0, 1]");
  const Geometry g = make_geometry(p, cfg);
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd x = gaussian(g.num_params(), rng);
  const Candidate c = candidate(g, x);
  const double top = schatten(c.spectrum, 0.0);
  const double s = top > 0.0 ? scale / top : 0.0;
  UsdPovm m;
  m.e0 = matlin::symmetrized(CMat(s * c.e0));
  m.e1 = matlin::symmetrized(CMat(s * c.e1));
  m.eq = matlin::symmetrized(CMat(matlin::identity<double>(g.dim) - m.e0 - m.e1));
  return m;
}

UsdPovm random_usd_povm(const UsdProblem& p, std::uint64_t seed, const NumericConfig& cfg) {
  std::mt19937_64 rng(restart_seed(seed, 0xa11ce));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return random_usd_povm(p, seed, unit(rng), cfg);
}

OracleResult optimize_usd(const UsdProblem& p, const OracleConfig& cfg, const NumericConfig& num) {
  if (p.dim() > cfg.max_dim) {
    throw Error(Errc::DimensionTooLarge, "oracle accepts dimension <= " + std::to_string(cfg.max_dim));
  }
  if (cfg.restarts < 1 || cfg.max_iterations < 1 || !(cfg.step_tolerance > 0.0)) {
    throw Error(Errc::InvalidArgument, "oracle configuration out of range");
  }
  const Geometry g = make_geometry(p, num);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.restarts; i = next++) {
      outcomes[static_cast<std::size_t>(i)] = run_restart(g, cfg, restart_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    }
  };
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.restarts);
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  OracleResult res;
  res.converged = true;
  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    res.restart_q.push_back(outcomes[i].q);
    res.evaluations += outcomes[i].evaluations;
    res.converged = res.converged && outcomes[i].converged;
    if (outcomes[i].q < outcomes[best].q) best = i;
  }
  res.best_q = outcomes[best].q;
  res.best_povm = std::move(outcomes[best].povm);
  res.q_bound = usd::lower_bound(p, num).q_bound;
  res.gap_to_bound = res.best_q - res.q_bound;
  return res;
}

}  // namespace usdkit::oracle
