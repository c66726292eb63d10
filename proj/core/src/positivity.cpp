// Copyright 2026 The qbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbm/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

constexpr double kPurityTol = 1e-10;

double ratio(const Real& num, const Real& den) {
  if (den == 0) return 0.0;
  return to_double(num / den);
}

}  // namespace

Real witness_w(const GaussianState& state_V, const MapCoefficients& map,
               double m, double hbar) {
  const Real h = hbar;
  const Real mass = m;
  const Real R2 = map.damping();
  const Real R4 = R2 * R2;
  const Real Q = state_V.q2();
  const Real Pp = state_V.p2();
  const Real P = state_V.qp_anti();
  return h * h - 4 * R4 * Q * Pp - 4 * mass * map.a * R2 * Q -
         4 * R2 * (map.b / mass) * Pp - h * h * map.r2 * map.r2 + R4 * P * P +
         2 * R2 * map.c * P;
}

Witness witness(const GaussianState& state_V, const MapCoefficients& map,
                double m, double hbar) {
  const Real h = hbar;
  const Real mass = m;
  const Real R2 = map.damping();
  Witness out;
  out.w = witness_w(state_V, map, m, hbar);
  if (out.w < 0) {
    throw ConsistencyError("witness requested with w < 0");
  }
  const Real P2 = R2 * state_V.p2() + mass * map.a;
  const Real B = R2 * state_V.qp_anti() + map.c;
  out.lambda = (h + sqrt(out.w)) / (2 * P2);
  out.beta_bar = -B / (2 * P2);
  out.I_value =
      quadratic_form_I(out.lambda, out.beta_bar, state_V, map, m, hbar);

  const Real P = state_V.qp_anti();
  const Real frac = (map.a * map.b - h * h * map.r2 * map.r2 / 4 +
                     R2 * R2 * P * P / 4 + R2 * map.c * P / 2) /
                    P2;
  const Real t1 = P2 * out.lambda * out.lambda;
  const Real t2 = h * out.lambda;
  const Real t3 = R2 * state_V.q2() + map.b / mass;
  out.residual = t1 - t2 + t3 - frac;
  out.residual_scale = abs(t1);
  for (const Real& term : {abs(t2), abs(t3), abs(frac)}) {
    if (term > out.residual_scale) out.residual_scale = term;
  }
  return out;
}

TheoremReport theorem_check(const GaussianState& state_V,
                            const MapCoefficients& map, double m,
                            double hbar) {
  if (map.a < 0) throw ScopeError("theorem requires a > 0");
  if (map.b < 0) throw ScopeError("theorem requires b >= 0");
  if (map.r2 < 0 || map.r2 >= 1) {
    throw ScopeError("theorem requires 0 <= r^2 < 1");
  }
  const Real h = hbar;
  const Real h2 = h * h;
  const Real mass = m;
  const Real P = state_V.qp_anti();
  const Real Q = state_V.q2();
  const Real Pp = state_V.p2();
  const Real ab = map.a * map.b;
  const Real det = map.fluct_det();
  const Real B = h2 * map.r2 + map.c * P;
  // Same as B^2/4 - ab (hbar^2 + P^2), arranged so the c^2 P^2 / 4 terms
  // cancel analytically.
  const Real d1 = h2 * h2 * map.r2 * map.r2 / 4 +
                  h2 * (map.r2 * map.c * P / 2 - ab) - det * P * P / 4;

  TheoremReport rep;
  rep.in_scope = map.a > 0;
  rep.edge_b_zero = map.b == 0;
  rep.d1 = to_double(d1);

  // d1 > 0
  {
    ConditionResult& c = rep.conditions[0];
    c.name = "d1_positive";
    c.value = rep.d1;
    c.threshold = 0.0;
    const Real scale = ab * h2 > 0 ? ab * h2 : B * B / 4;
    c.margin = ratio(d1, scale);
    c.holds = d1 > 0;
  }
  // B > 0
  {
    ConditionResult& c = rep.conditions[1];
    c.name = "B_positive";
    c.value = to_double(B);
    c.threshold = 0.0;
    c.margin = ratio(B, h2 * map.r2 + abs(map.c * P));
    c.holds = B > 0;
  }
  // purity
  {
    ConditionResult& c = rep.conditions[2];
    c.name = "purity";
    const Real target = (P * P + h2) / 4;
    const Real defect = abs(Q * Pp - target) / target;
    c.value = to_double(defect);
    c.threshold = kPurityTol;
    c.margin = (kPurityTol - c.value) / kPurityTol;
    c.holds = defect <= kPurityTol;
  }
  Real s_minus = 0;
  Real s_plus = 0;
  const bool roots = map.a > 0 && d1 >= 0;
  if (roots) {
    const Real root = sqrt(d1);
    s_minus = (B / 2 - root) / (2 * mass * map.a);
    s_plus = (B / 2 + root) / (2 * mass * map.a);
    rep.s_minus = to_double(s_minus);
    rep.s_plus = to_double(s_plus);
  } else {
    rep.s_minus = std::numeric_limits<double>::quiet_NaN();
    rep.s_plus = std::numeric_limits<double>::quiet_NaN();
  }
  // <q^2>_V between the roots
  {
    ConditionResult& c = rep.conditions[3];
    c.name = "q2_between_roots";
    c.value = to_double(Q);
    if (roots && s_plus > s_minus) {
      const Real lo = Q - s_minus;
      const Real hi = s_plus - Q;
      c.threshold = to_double(lo < hi ? s_minus : s_plus);
      c.margin = ratio(lo < hi ? lo : hi, (s_plus - s_minus) / 2);
      c.holds = Q > s_minus && Q < s_plus;
    } else {
      c.threshold = std::numeric_limits<double>::quiet_NaN();
      c.margin = -1.0;
      c.holds = false;
    }
  }
  // roots well defined
  {
    ConditionResult& c = rep.conditions[4];
    c.name = "roots_well_defined";
    c.value = rep.s_minus;
    c.threshold = 0.0;
    if (roots && d1 > 0) {
      const Real centre = (s_plus + s_minus) / 2;
      c.margin = std::min(ratio(s_minus, centre), rep.conditions[0].margin);
      c.holds = s_minus >= 0 && s_minus < s_plus;
    } else {
      c.margin = -1.0;
      c.holds = false;
    }
  }
  // 0 <= 4ab - c^2 < hbar^2 r^4
  {
    ConditionResult& c = rep.conditions[5];
    c.name = "fluctuation_bound";
    const Real bound = h2 * map.r2 * map.r2;
    c.value = to_double(det);
    c.threshold = to_double(bound);
    const double lower = ratio(det, 4 * ab);
    const double upper = bound > 0 ? ratio(bound - det, bound) : -1.0;
    c.margin = std::min(lower, upper);
    c.holds = det >= 0 && det < bound;
  }

  rep.all_hold = rep.in_scope;
  for (const ConditionResult& c : rep.conditions) rep.all_hold &= c.holds;
  if (rep.all_hold) {
    Witness wit = witness(state_V, map, m, hbar);
    if (!(wit.I_value < 0)) {
      throw ConsistencyError(
          "all theorem conditions hold but the witness is not negative");
    }
    rep.witness = wit;
    if (state_V.mean_q == 0 && state_V.mean_p == 0) {
      const UncertaintyCheck u = uncertainty_violation(state_V, map, m, hbar);
      rep.uncertainty_lhs = to_double(u.lhs);
      rep.uncertainty_rhs = to_double(u.rhs);
    }
  }
  return rep;
}

UncertaintyCheck uncertainty_violation(const GaussianState& state_V,
                                       const MapCoefficients& map, double m,
                                       double hbar) {
  if (state_V.mean_q != 0 || state_V.mean_p != 0) {
    throw ScopeError("uncertainty check requires zero first moments");
  }
  const EvolvedMoments ev = propagate_moments(state_V, map, m, hbar);
  const Real h = hbar;
  const Real w = witness_w(state_V, map, m, hbar);
  UncertaintyCheck out;
  out.lhs = ev.q2 * ev.p2;
  out.rhs_strong = (ev.qp_anti * ev.qp_anti + h * h) / 4;
  out.rhs = out.rhs_strong - w / 4;
  out.violated = out.lhs < out.rhs && out.lhs < out.rhs_strong;
  return out;
}

CorollaryParams associate_corollary_params(const CoefficientSet& coeffs,
                                           double m, double hbar) {
  if (!(coeffs.R2 > 0.0)) throw DomainError("corollary requires R^2 > 0");
  const double r2 = coeffs.one_minus_R2;
  CorollaryParams p;
  p.sigma = r2 == 0.0 ? 1.0 / (2.0 * hbar * hbar)
                      : -std::log1p(-r2) / (2.0 * hbar * hbar * r2);
  p.eta = m * coeffs.Y;
  p.xi = coeffs.X / m;
  p.zeta = std::complex<double>(-0.5 * coeffs.Xdot, -0.5 * hbar * r2);
  p.gram = 0.25 * (coeffs.fluct_det - hbar * hbar * r2 * r2);
  return p;
}

namespace {

double rounding_tol(double eta, double xi, std::complex<double> zeta) {
  return 8.0 * std::numeric_limits<double>::epsilon() *
         std::max(std::abs(eta * xi), std::norm(zeta));
}

}  // namespace

std::vector<LindbladPair> lindblad_decompose(double eta, double xi,
                                             std::complex<double> zeta) {
  using C = std::complex<double>;
  if (!std::isfinite(eta) || !std::isfinite(xi) ||
      !std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) {
    throw NotDecomposableError("coefficients must be finite");
  }
  const double tol = rounding_tol(eta, xi, zeta);
  if (eta < 0.0 || xi < 0.0) {
    throw NotDecomposableError("diagonal coefficients must be non-negative");
  }
  const double gram = eta * xi - std::norm(zeta);
  if (gram < -tol) {
    throw NotDecomposableError(
        "coefficient matrix is not positive semidefinite");
  }
  std::vector<LindbladPair> pairs;
  if (eta == 0.0 && xi == 0.0) return pairs;
  if (eta >= xi) {
    const double s = std::sqrt(eta);
    pairs.push_back({C(s, 0.0), zeta / s});
    const double schur = std::max(0.0, gram) / eta;
    if (schur > 0.0) pairs.push_back({C(), C(std::sqrt(schur), 0.0)});
  } else {
    const double s = std::sqrt(xi);
    pairs.push_back({std::conj(zeta) / s, C(s, 0.0)});
    const double schur = std::max(0.0, gram) / xi;
    if (schur > 0.0) pairs.push_back({C(std::sqrt(schur), 0.0), C()});
  }
  return pairs;
}

CorollaryReport corollary_check(const CorollaryParams& p) {
  CorollaryReport rep;
  rep.sigma = p.sigma;
  rep.eta = p.eta;
  rep.xi = p.xi;
  rep.zeta = p.zeta;
  rep.gram = p.gram ? *p.gram : p.eta * p.xi - std::norm(p.zeta);
  const double scale = std::max(std::abs(p.eta * p.xi), std::norm(p.zeta));
  rep.margin_sigma = p.sigma;
  rep.margin_eta = p.eta;
  rep.margin_xi = p.xi;
  rep.margin_gram = scale > 0.0 ? rep.gram / scale : 0.0;
  const double tol = rounding_tol(p.eta, p.xi, p.zeta);
  rep.passes = p.sigma >= 0.0 && p.eta >= 0.0 && p.xi >= 0.0 &&
               rep.gram >= -tol;
  if (rep.passes) rep.decomposition = lindblad_decompose(p.eta, p.xi, p.zeta);
  return rep;
}

CorollaryReport corollary_check(double sigma, double eta, double xi,
                                std::complex<double> zeta) {
  return corollary_check(CorollaryParams{sigma, eta, xi, zeta, std::nullopt});
}

}  // namespace qbm
