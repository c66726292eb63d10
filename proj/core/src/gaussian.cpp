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

#include "qbm/gaussian.hpp"

#include "qbm/errors.hpp"

namespace qbm {

GaussianState GaussianState::centered(const Real& q2, const Real& p2,
                                      const Real& qp_anti) {
  GaussianState s;
  s.cqq = q2;
  s.cpp = p2;
  s.cqp_sym = qp_anti / 2;
  return s;
}

GaussianState GaussianState::ground_state(const PhysicalParams& params) {
  params.validate();
  const Real hbar = params.hbar;
  const Real m = params.m;
  const Real omega = params.omega;
  return centered(hbar / (2 * m * omega), m * hbar * omega / 2, 0);
}

Real GaussianState::uncertainty_defect(double hbar) const {
  const Real h = hbar;
  return cqq * cpp - cqp_sym * cqp_sym - h * h / 4;
}

bool GaussianState::is_pure(double hbar, double rel_tol) const {
  const Real h = hbar;
  return abs(uncertainty_defect(hbar)) <= rel_tol * h * h / 4;
}

void GaussianState::validate(double hbar) const {
  if (!(cqq > 0) || !(cpp > 0)) {
    throw DomainError("state variances must be positive");
  }
  const Real h = hbar;
  if (uncertainty_defect(hbar) < -1e-10 * h * h / 4) {
    throw DomainError("state violates the uncertainty principle");
  }
}

MapCoefficients associate_theorem_params(const CoefficientSet& coeffs) {
  if (!(coeffs.one_minus_R2 >= 0.0) || !(coeffs.one_minus_R2 < 1.0)) {
    throw RegimeError("r^2 = 1 - R^2 must lie in [0, 1)");
  }
  const double direct = 4.0 * coeffs.X * coeffs.Y - coeffs.Xdot * coeffs.Xdot;
  const double scale = 4.0 * coeffs.X * coeffs.Y + coeffs.Xdot * coeffs.Xdot;
  if (!(std::abs(coeffs.fluct_det - direct) <= 1e-10 * scale)) {
    throw ConsistencyError("fluct_det does not match 4XY - Xdot^2");
  }
  MapCoefficients map;
  map.a = coeffs.Y;
  map.b = coeffs.X;
  map.c = coeffs.Xdot;
  map.r2 = coeffs.one_minus_R2;
  // Carry the separately integrated 4XY - Xdot^2 into the map: 4ab - c^2
  // formed from rounded a, b, c cancels below double resolution at small
  // t. Moving b within its rounding makes 4ab - c^2 equal fluct_det.
  if (map.a > 0) {
    map.b = (Real(coeffs.fluct_det) + map.c * map.c) / (4 * map.a);
  }
  return map;
}

EvolvedMoments propagate_moments(const GaussianState& state_V,
                                 const MapCoefficients& map, double m,
                                 double hbar) {
  (void)hbar;
  // Inputs arrive as doubles; allow for their rounding only.
  if (map.fluct_det() < -1e-12 * (4 * abs(map.a * map.b) + map.c * map.c)) {
    throw ConsistencyError(
        "4ab - c^2 < 0: the map does not factor into dissipation and "
        "fluctuation parts");
  }
  const Real R2 = map.damping();
  const Real mass = m;
  EvolvedMoments out;
  out.q2 = R2 * state_V.q2() + map.b / mass;
  out.p2 = R2 * state_V.p2() + mass * map.a;
  out.qp_anti = R2 * state_V.qp_anti() + map.c;
  out.map = map;
  return out;
}

Real quadratic_form_I(const Real& lambda, const Real& beta,
                      const GaussianState& state_V, const MapCoefficients& map,
                      double m, double hbar) {
  const Real R2 = map.damping();
  const Real mass = m;
  const Real p2 = R2 * state_V.p2() + mass * map.a;
  const Real qp = R2 * state_V.qp_anti() + map.c;
  const Real q2 = R2 * state_V.q2() + map.b / mass;
  return p2 * beta * beta + qp * beta + lambda * lambda * p2 + q2 -
         Real(hbar) * lambda;
}

}  // namespace qbm
