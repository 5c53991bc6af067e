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

#include "usdkit/usd.hpp"

#include <algorithm>
#include <cmath>

namespace usdkit {

using matlin::eig_hermitian;
using matlin::max_abs;

DensityMatrix DensityMatrix::from_matrix(const CMat& m, const NumericConfig& cfg) {
  CMat h;
  try {
    h = matlin::hermitize(m, cfg);
  } catch (const Error& e) {
    throw Error(Errc::InvalidState, std::string("density matrix: ") + e.what());
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > cfg.equality) {
    throw Error(Errc::InvalidState, "density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const auto es = eig_hermitian(h);
  if (es.min() < -cfg.psd * es.scale()) {
    throw Error(Errc::InvalidState, "density matrix has eigenvalue " + std::to_string(es.min()));
  }
  return DensityMatrix(std::move(h));
}

UsdProblem UsdProblem::make(DensityMatrix rho0, DensityMatrix rho1, double eta0, double eta1,
                            const NumericConfig& cfg) {
  if (rho0.dim() != rho1.dim()) {
    throw Error(Errc::InvalidProblem, "states have different dimensions");
  }
  if (!(eta0 > 0.0 && eta0 < 1.0 && eta1 > 0.0 && eta1 < 1.0)) {
    throw Error(Errc::InvalidProblem, "priors must lie in (0, 1)");
  }
  if (std::abs(eta0 + eta1 - 1.0) > cfg.equality) {
    throw Error(Errc::InvalidProblem, "priors must sum to 1");
  }
  return UsdProblem(std::move(rho0), std::move(rho1), eta0, eta1);
}

UsdProblem UsdProblem::make(const CMat& rho0, const CMat& rho1, double eta0, double eta1,
                            const NumericConfig& cfg) {
  return make(DensityMatrix::from_matrix(rho0, cfg), DensityMatrix::from_matrix(rho1, cfg), eta0, eta1, cfg);
}

double UsdProblem::prior_ratio_sqrt() const { return std::sqrt(eta1_ / eta0_); }

UsdProblem UsdProblem::with_ratio(double eta1_over_eta0) const {
  if (!(eta1_over_eta0 > 0.0) || !std::isfinite(eta1_over_eta0)) {
    throw Error(Errc::InvalidProblem, "prior ratio must be positive and finite");
  }
  const double e0 = 1.0 / (1.0 + eta1_over_eta0);
  return UsdProblem(rho0_, rho1_, e0, 1.0 - e0);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::First: return "first";
    case Regime::Second: return "second";
    case Regime::Third: return "third";
    case Regime::BoundaryFirstSecond: return "boundary-first-second";
    case Regime::BoundarySecondThird: return "boundary-second-third";
  }
  return "unknown";
}

namespace usd {
namespace {

void require_disjoint_supports(const UsdProblem& p, const NumericConfig& cfg) {
  if (!matlin::rank_additive(p.rho0(), p.rho1(), cfg)) {
    throw Error(Errc::OverlappingSupports, "supports of rho0 and rho1 intersect; reduce the problem first");
  }
}

struct Condition {
  CMat matrix;
  double min_eig;
  double max_abs_eig;
};

Condition condition(const CMat& rho, const CMat& f, double coeff, const NumericConfig& cfg) {
  Condition c;
  c.matrix = matlin::hermitize(CMat(rho - coeff * f), cfg, max_abs(rho));
  const auto es = eig_hermitian(c.matrix);
  c.min_eig = es.min();
  c.max_abs_eig = es.scale();
  return c;
}

SaturationCheck assemble(Regime regime, double alpha, const UsdProblem& p, const FidelityData& fd,
                         bool zero0, bool zero1, const NumericConfig& cfg) {
  SaturationCheck out;
  out.regime = regime;
  out.alpha = alpha;
  auto c0 = condition(p.rho0(), fd.f0, alpha, cfg);
  auto c1 = condition(p.rho1(), fd.f1, 1.0 / alpha, cfg);
  out.cond0_min_eig = c0.min_eig;
  out.cond1_min_eig = c1.min_eig;
  out.cond0_max_abs_eig = c0.max_abs_eig;
  out.cond1_max_abs_eig = c1.max_abs_eig;
  out.cond0_matrix = std::move(c0.matrix);
  out.cond1_matrix = std::move(c1.matrix);
  out.cond0_zero_required = zero0;
  out.cond1_zero_required = zero1;

  // Margins are measured against the scale of the corresponding state: the
  // condition matrix itself can vanish identically.
  const double floor0 = cfg.psd * eig_hermitian(p.rho0()).scale();
  const double floor1 = cfg.psd * eig_hermitian(p.rho1()).scale();
  const bool ok0 = zero0 ? out.cond0_max_abs_eig <= floor0 : out.cond0_min_eig >= -floor0;
  const bool ok1 = zero1 ? out.cond1_max_abs_eig <= floor1 : out.cond1_min_eig >= -floor1;
  out.saturated = ok0 && ok1;
  return out;
}

}  // namespace

FidelityData fidelity_data(const UsdProblem& p, const NumericConfig& cfg) {
  FidelityData fd;
  fd.sqrt_rho0 = matlin::sqrt_psd(p.rho0(), cfg);
  fd.sqrt_rho1 = matlin::sqrt_psd(p.rho1(), cfg);
  const auto polar = matlin::polar_decompose(CMat(fd.sqrt_rho0 * fd.sqrt_rho1));
  fd.f0 = polar.abs;
  fd.v = polar.unitary;
  fd.f1 = matlin::symmetrized(CMat(fd.v.adjoint() * fd.f0 * fd.v));
  fd.fidelity = std::clamp(polar.singular_values.sum(), 0.0, 1.0);
  return fd;
}

OverlapData overlap_data(const UsdProblem& p, const NumericConfig& cfg) {
  OverlapData od;
  od.p0 = matlin::support_projector(p.rho0(), cfg);
  od.p1 = matlin::support_projector(p.rho1(), cfg);
  od.t10 = matlin::trace_product(od.p1, p.rho0()).real();
  od.t01 = matlin::trace_product(od.p0, p.rho1()).real();
  return od;
}

RegimeInfo classify_regime(double r, double fidelity, double t10, double t01, const NumericConfig& cfg) {
  if (fidelity <= cfg.equality) {
    throw Error(Errc::ZeroFidelity, "states are perfectly distinguishable");
  }
  RegimeInfo info;
  info.lower_threshold = t10 / fidelity;
  info.upper_threshold = fidelity / t01;
  const double lo = info.lower_threshold;
  const double hi = info.upper_threshold;
  // When t10 * t01 > F^2 the thresholds cross and there is no middle regime;
  // the rules below are then applied in order without boundary labels.
  const bool has_middle = lo <= hi + cfg.equality;

  if (has_middle && std::abs(r - lo) <= cfg.equality) {
    info.regime = Regime::BoundaryFirstSecond;
  } else if (has_middle && std::abs(r - hi) <= cfg.equality) {
    info.regime = Regime::BoundarySecondThird;
  } else if (r < lo) {
    info.regime = Regime::First;
  } else if (r > hi) {
    info.regime = Regime::Third;
  } else {
    info.regime = Regime::Second;
  }

  switch (info.regime) {
    case Regime::First: info.alpha = lo; break;
    case Regime::Third: info.alpha = hi; break;
    case Regime::Second: info.alpha = r; break;
    case Regime::BoundaryFirstSecond:
    case Regime::BoundarySecondThird: {
      const double outer = info.regime == Regime::BoundaryFirstSecond ? lo : hi;
      if (std::abs(outer - r) > cfg.equality) {
        throw Error(Errc::ConvergenceFailure, "regime boundary values of alpha disagree");
      }
      info.alpha = r;
      break;
    }
  }
  return info;
}

RegimeInfo classify_regime(const UsdProblem& p, const NumericConfig& cfg) {
  const auto fd = fidelity_data(p, cfg);
  const auto od = overlap_data(p, cfg);
  return classify_regime(p.prior_ratio_sqrt(), fd.fidelity, od.t10, od.t01, cfg);
}

double rudolph_bound(double eta0, double eta1, double f) {
  const double r = std::sqrt(eta1 / eta0);
  if (r <= f) return eta0 * f * f + eta1;
  if (f > 0 && r >= 1.0 / f) return eta0 + eta1 * f * f;
  return 2.0 * std::sqrt(eta0 * eta1) * f;
}

BoundsReport lower_bound(const UsdProblem& p, const NumericConfig& cfg) {
  const auto fd = fidelity_data(p, cfg);
  const auto od = overlap_data(p, cfg);
  const double e0 = p.eta0();
  const double e1 = p.eta1();
  const double f = fd.fidelity;

  BoundsReport rep;
  rep.fidelity = f;
  rep.t10 = od.t10;
  rep.t01 = od.t01;
  rep.helstrom_q = helstrom_bound(p);
  rep.rudolph_bound = rudolph_bound(e0, e1, f);

  if (f <= cfg.equality) {
    rep.zero_fidelity = true;
    rep.regime = Regime::Second;
    rep.alpha = p.prior_ratio_sqrt();
    rep.rudolph_bound = 0;
    return rep;
  }

  const auto ri = classify_regime(p.prior_ratio_sqrt(), f, od.t10, od.t01, cfg);
  rep.regime = ri.regime;
  rep.alpha = ri.alpha;
  switch (ri.regime) {
    case Regime::First: rep.q_bound = e1 * f * f / od.t10 + e0 * od.t10; break;
    case Regime::Third: rep.q_bound = e0 * f * f / od.t01 + e1 * od.t01; break;
    default: rep.q_bound = 2.0 * std::sqrt(e0 * e1) * f; break;
  }
  rep.q0_at_bound = rep.alpha * e0 * f;
  rep.q1_at_bound = rep.q_bound - rep.q0_at_bound;
  return rep;
}

SaturationCheck check_saturation(const UsdProblem& p, const NumericConfig& cfg) {
  require_disjoint_supports(p, cfg);
  const auto fd = fidelity_data(p, cfg);
  const auto od = overlap_data(p, cfg);
  const auto ri = classify_regime(p.prior_ratio_sqrt(), fd.fidelity, od.t10, od.t01, cfg);
  return assemble(ri.regime, ri.alpha, p, fd, false, false, cfg);
}

SaturationCheck check_rudolph_saturation(const UsdProblem& p, const NumericConfig& cfg) {
  require_disjoint_supports(p, cfg);
  const auto fd = fidelity_data(p, cfg);
  const double f = fd.fidelity;
  if (f <= cfg.equality) {
    throw Error(Errc::ZeroFidelity, "states are perfectly distinguishable");
  }
  const double r = p.prior_ratio_sqrt();
  if (std::abs(r - f) <= cfg.equality) {
    return assemble(Regime::BoundaryFirstSecond, r, p, fd, false, false, cfg);
  }
  if (std::abs(r - 1.0 / f) <= cfg.equality) {
    return assemble(Regime::BoundarySecondThird, r, p, fd, false, false, cfg);
  }
  if (r < f) return assemble(Regime::First, f, p, fd, false, true, cfg);
  if (r > 1.0 / f) return assemble(Regime::Third, 1.0 / f, p, fd, true, false, cfg);
  return assemble(Regime::Second, r, p, fd, false, false, cfg);
}

UsdPovm build_povm(const UsdProblem& p, const NumericConfig& cfg) {
  require_disjoint_supports(p, cfg);
  const auto fd = fidelity_data(p, cfg);
  const Eigen::Index d = p.dim();
  const CMat id = matlin::identity<double>(d);

  if (fd.fidelity <= cfg.equality) {
    UsdPovm m;
    m.e0 = matlin::support_projector(p.rho0(), cfg);
    m.e1 = id - m.e0;
    m.eq = CMat::Zero(d, d);
    return m;
  }

  const auto od = overlap_data(p, cfg);
  const auto ri = classify_regime(p.prior_ratio_sqrt(), fd.fidelity, od.t10, od.t01, cfg);
  const auto sat = assemble(ri.regime, ri.alpha, p, fd, false, false, cfg);
  if (!sat.saturated) {
    throw Error(Errc::NotSaturated, "PSD conditions fail (margins " + std::to_string(sat.cond0_min_eig) + ", " +
                                        std::to_string(sat.cond1_min_eig) + ")");
  }

  const double a = ri.alpha;
  const double sa = std::sqrt(a);
  const CMat sigma = p.rho0() + p.rho1();
  const CMat sigma_inv = matlin::pinv_psd(sigma, cfg);
  const CMat& s0 = fd.sqrt_rho0;
  const CMat& s1 = fd.sqrt_rho1;

  UsdPovm m;
  m.e0 = matlin::symmetrized(CMat(sigma_inv * s0 * sat.cond0_matrix * s0 * sigma_inv));
  m.e1 = matlin::symmetrized(CMat(sigma_inv * s1 * sat.cond1_matrix * s1 * sigma_inv));
  const CMat left = sa * s0 + (1.0 / sa) * s1 * fd.v.adjoint();
  m.eq = matlin::symmetrized(CMat(sigma_inv * left * fd.f0 * left.adjoint() * sigma_inv));

  // Directions outside the span of both states never fire; assign them to a
  // conclusive outcome so the elements sum to the identity on the full space.
  const CMat outside = matlin::symmetrized(CMat(id - sigma * sigma_inv));
  if (ri.regime == Regime::Third) {
    m.e1 += outside;
  } else {
    m.e0 += outside;
  }

  const auto diag = diagnose_povm(p, m, cfg);
  if (!diag.valid) {
    throw Error(Errc::InvalidPovm, "constructed measurement failed validation (completeness error " +
                                       std::to_string(diag.completeness_error) + ")");
  }
  return m;
}

PovmDiagnostics diagnose_povm(const UsdProblem& p, const UsdPovm& m, const NumericConfig& cfg) {
  PovmDiagnostics d;
  const Eigen::Index n = p.dim();
  for (const CMat* e : {&m.e0, &m.e1, &m.eq}) {
    if (e->rows() != n || e->cols() != n) {
      throw Error(Errc::InvalidPovm, "POVM element has wrong dimension");
    }
    if (!e->allFinite()) throw Error(Errc::InvalidPovm, "POVM element has non-finite entries");
  }
  d.min_eig_e0 = matlin::min_eigenvalue(m.e0);
  d.min_eig_e1 = matlin::min_eigenvalue(m.e1);
  d.min_eig_eq = matlin::min_eigenvalue(m.eq);
  d.completeness_error = max_abs(CMat(m.e0 + m.e1 + m.eq - matlin::identity<double>(n)));
  d.leak01 = matlin::trace_product(m.e0, p.rho1()).real();
  d.leak10 = matlin::trace_product(m.e1, p.rho0()).real();
  const bool herm = matlin::is_hermitian(m.e0, cfg, 1.0) && matlin::is_hermitian(m.e1, cfg, 1.0) &&
                    matlin::is_hermitian(m.eq, cfg, 1.0);
  // Elements are bounded by the identity, so the PSD floor is absolute.
  d.valid = herm && d.min_eig_e0 >= -cfg.psd && d.min_eig_e1 >= -cfg.psd && d.min_eig_eq >= -cfg.psd &&
            d.completeness_error <= cfg.equality && std::abs(d.leak01) <= cfg.equality &&
            std::abs(d.leak10) <= cfg.equality;
  return d;
}

FailureProbs failure_probs_unchecked(const UsdProblem& p, const UsdPovm& m) {
  FailureProbs fp;
  fp.q0 = p.eta0() * matlin::trace_product(m.eq, p.rho0()).real();
  fp.q1 = p.eta1() * matlin::trace_product(m.eq, p.rho1()).real();
  fp.q = fp.q0 + fp.q1;
  return fp;
}

FailureProbs failure_probs(const UsdProblem& p, const UsdPovm& m, const NumericConfig& cfg) {
  const auto d = diagnose_povm(p, m, cfg);
  if (!d.valid) {
    throw Error(Errc::InvalidPovm, "not a valid USD measurement for this problem");
  }
  return failure_probs_unchecked(p, m);
}

double helstrom_bound(const UsdProblem& p) {
  const CMat diff = p.eta1() * p.rho1() - p.eta0() * p.rho0();
  return std::clamp(0.5 * (1.0 - matlin::trace_norm(diff)), 0.0, 0.5);
}

double inconclusive_state_mismatch(const UsdProblem& p, const UsdPovm& m, double alpha, const NumericConfig& cfg) {
  const CMat root = matlin::sqrt_psd(m.eq, cfg);
  const CMat a = root * p.rho0() * root;
  const CMat b = root * p.rho1() * root;
  return max_abs(CMat(a - alpha * alpha * b));
}

}  // namespace usd
}  // namespace usdkit
