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
 * Unambiguous discrimination of two mixed states: fidelity operators,
 * prior-ratio regimes, lower bounds on the failure probability, the PSD
 * conditions under which those bounds are attained, and the measurement
 * that attains them.
 *
 * Conventions: r = sqrt(eta1 / eta0) is the prior ratio parameter,
 * t10 = Tr(P1 rho0) and t01 = Tr(P0 rho1) with P_i the support projectors.
 * The regime thresholds are t10 / F and F / t01.
 */

#pragma once

#include <string_view>

#include "usdkit/matlin.hpp"

namespace usdkit {

/// Trace-one PSD Hermitian matrix. Construction validates and symmetrizes.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const CMat& m, const NumericConfig& cfg = {});

  const CMat& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  explicit DensityMatrix(CMat m) : mat_(std::move(m)) {}
  CMat mat_;
};

/// Two states with their priors. Priors must already sum to one.
class UsdProblem {
 public:
  static UsdProblem make(DensityMatrix rho0, DensityMatrix rho1, double eta0, double eta1,
                         const NumericConfig& cfg = {});
  static UsdProblem make(const CMat& rho0, const CMat& rho1, double eta0, double eta1,
                         const NumericConfig& cfg = {});

  const CMat& rho0() const { return rho0_.matrix(); }
  const CMat& rho1() const { return rho1_.matrix(); }
  const DensityMatrix& state0() const { return rho0_; }
  const DensityMatrix& state1() const { return rho1_; }
  double eta0() const { return eta0_; }
  double eta1() const { return eta1_; }
  Eigen::Index dim() const { return rho0_.dim(); }

  /// sqrt(eta1 / eta0)
  double prior_ratio_sqrt() const;

  /// Same states, priors eta0 = 1 / (1 + ratio), eta1 = ratio / (1 + ratio).
  UsdProblem with_ratio(double eta1_over_eta0) const;

 private:
  UsdProblem(DensityMatrix r0, DensityMatrix r1, double e0, double e1)
      : rho0_(std::move(r0)), rho1_(std::move(r1)), eta0_(e0), eta1_(e1) {}
  DensityMatrix rho0_;
  DensityMatrix rho1_;
  double eta0_;
  double eta1_;
};

/// sqrt(rho0) sqrt(rho1) = F0 V = V F1, F = Tr F0 = Tr F1.
struct FidelityData {
  double fidelity = 0;
  CMat f0;
  CMat f1;
  CMat v;
  CMat sqrt_rho0;
  CMat sqrt_rho1;
};

struct OverlapData {
  CMat p0;
  CMat p1;
  double t10 = 0;  ///< Tr(P1 rho0)
  double t01 = 0;  ///< Tr(P0 rho1)
};

enum class Regime { First, Second, Third, BoundaryFirstSecond, BoundarySecondThird };

std::string_view to_string(Regime r);

struct RegimeInfo {
  Regime regime = Regime::Second;
  double alpha = 1;
  double lower_threshold = 0;  ///< t10 / F
  double upper_threshold = 0;  ///< F / t01
};

struct BoundsReport {
  Regime regime = Regime::Second;
  double alpha = 1;
  double q_bound = 0;
  double q0_at_bound = 0;
  double q1_at_bound = 0;
  double rudolph_bound = 0;
  double helstrom_q = 0;
  double fidelity = 0;
  double t10 = 0;
  double t01 = 0;
  bool zero_fidelity = false;
};

/// rho0 - alpha F0 and rho1 - F1 / alpha with their smallest eigenvalues.
/// For the looser fidelity-only bounds some conditions demand equality to
/// zero rather than PSD; `cond*_zero_required` records which.
struct SaturationCheck {
  Regime regime = Regime::Second;
  double alpha = 1;
  CMat cond0_matrix;
  CMat cond1_matrix;
  double cond0_min_eig = 0;
  double cond1_min_eig = 0;
  double cond0_max_abs_eig = 0;
  double cond1_max_abs_eig = 0;
  bool cond0_zero_required = false;
  bool cond1_zero_required = false;
  bool saturated = false;

  double min_margin() const { return std::min(cond0_min_eig, cond1_min_eig); }
};

struct UsdPovm {
  CMat e0;
  CMat e1;
  CMat eq;  ///< inconclusive outcome
};

struct FailureProbs {
  double q0 = 0;
  double q1 = 0;
  double q = 0;
};

/// Numbers behind UsdPovm validity, so tests and reports can show margins.
struct PovmDiagnostics {
  double min_eig_e0 = 0;
  double min_eig_e1 = 0;
  double min_eig_eq = 0;
  double completeness_error = 0;  ///< |E0 + E1 + E? - 1|_max
  double leak01 = 0;              ///< Tr(E0 rho1)
  double leak10 = 0;              ///< Tr(E1 rho0)
  bool valid = false;
};

namespace usd {

FidelityData fidelity_data(const UsdProblem& p, const NumericConfig& cfg = {});
OverlapData overlap_data(const UsdProblem& p, const NumericConfig& cfg = {});

/// Throws ZeroFidelity when F <= tol.equality.
RegimeInfo classify_regime(const UsdProblem& p, const NumericConfig& cfg = {});
RegimeInfo classify_regime(double ratio_sqrt, double fidelity, double t10, double t01,
                           const NumericConfig& cfg = {});

/// Three-regime lower bound on Q. Perfectly distinguishable states produce a
/// report with q_bound = 0 and zero_fidelity set.
BoundsReport lower_bound(const UsdProblem& p, const NumericConfig& cfg = {});

/// The fidelity-only bound (thresholds F and 1/F).
double rudolph_bound(double eta0, double eta1, double fidelity);

/// Requires non-overlapping supports; throws OverlappingSupports otherwise.
SaturationCheck check_saturation(const UsdProblem& p, const NumericConfig& cfg = {});

/// As check_saturation but for the fidelity-only bound: in the outer regimes
/// one condition must vanish rather than be PSD.
SaturationCheck check_rudolph_saturation(const UsdProblem& p, const NumericConfig& cfg = {});

/// Optimal measurement when check_saturation holds; throws NotSaturated
/// otherwise. For F = 0 returns the projective measurement {P0, 1 - P0, 0}.
UsdPovm build_povm(const UsdProblem& p, const NumericConfig& cfg = {});

PovmDiagnostics diagnose_povm(const UsdProblem& p, const UsdPovm& m, const NumericConfig& cfg = {});

/// Throws InvalidPovm if the measurement is not a valid USD POVM for p.
FailureProbs failure_probs(const UsdProblem& p, const UsdPovm& m, const NumericConfig& cfg = {});

/// Q0, Q1 without validating the measurement.
FailureProbs failure_probs_unchecked(const UsdProblem& p, const UsdPovm& m);

/// Minimum-error probability 1/2 (1 - |eta1 rho1 - eta0 rho0|_1).
double helstrom_bound(const UsdProblem& p);

/// |sqrt(E?) rho0 sqrt(E?) - alpha^2 sqrt(E?) rho1 sqrt(E?)|_max: zero when
/// the post-measurement inconclusive states coincide up to normalization.
double inconclusive_state_mismatch(const UsdProblem& p, const UsdPovm& m, double alpha,
                                   const NumericConfig& cfg = {});

}  // namespace usd
}  // namespace usdkit
