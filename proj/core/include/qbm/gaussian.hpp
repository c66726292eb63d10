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

#pragma once

/// @file
/// Gaussian states in the V-frame, second-moment propagation under the
/// coefficient map (a, b, c, r^2), and the quadratic form
/// I(lambda, beta) = Tr[(q + (beta + i lambda) p) rho (q + (beta - i lambda) p)].
///
/// In the map, r^2 stands for 1 - R^2, so the V-frame moments are damped
/// by the factor 1 - r^2 = R^2.

#include "qbm/params.hpp"
#include "qbm/real.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

/// First and centred second moments of a Gaussian state.
struct GaussianState {
  Real mean_q = 0;
  Real mean_p = 0;
  Real cqq = 0;      ///< <(q - <q>)^2>
  Real cpp = 0;      ///< <(p - <p>)^2>
  Real cqp_sym = 0;  ///< <q~p~ + p~q~> / 2

  /// State with zero means and raw moments <q^2>, <p^2>, <qp + pq>.
  static GaussianState centered(const Real& q2, const Real& p2,
                                const Real& qp_anti);

  /// Oscillator ground state at frequency Omega.
  static GaussianState ground_state(const PhysicalParams& params);

  Real q2() const { return cqq + mean_q * mean_q; }
  Real p2() const { return cpp + mean_p * mean_p; }
  /// <qp + pq>
  Real qp_anti() const { return 2 * (cqp_sym + mean_q * mean_p); }

  /// cqq cpp - cqp_sym^2 - hbar^2 / 4; zero for pure states.
  Real uncertainty_defect(double hbar) const;

  /// |defect| <= rel_tol * hbar^2 / 4.
  bool is_pure(double hbar, double rel_tol = 1e-10) const;

  /// Throws DomainError unless cqq > 0, cpp > 0 and the state obeys the
  /// Robertson-Schroedinger bound to relative 1e-10.
  void validate(double hbar) const;
};

/// Coefficients (a, b, c, r^2) of the evolution map.
struct MapCoefficients {
  Real a = 0;
  Real b = 0;
  Real c = 0;
  Real r2 = 0;  ///< 1 - R^2

  Real damping() const { return 1 - r2; }
  /// 4ab - c^2
  Real fluct_det() const { return 4 * a * b - c * c; }
};

/// a = Y, b = X, c = Xdot, r^2 = 1 - R^2, with b adjusted within its
/// rounding so that 4ab - c^2 equals coeffs.fluct_det. Throws RegimeError
/// unless 0 <= r^2 < 1 and ConsistencyError if fluct_det differs from
/// 4XY - Xdot^2 by more than 1e-10 (4XY + Xdot^2).
MapCoefficients associate_theorem_params(const CoefficientSet& coeffs);

/// Second moments at t.
struct EvolvedMoments {
  Real q2;
  Real p2;
  Real qp_anti;  ///< <qp + pq>
  MapCoefficients map;
};

/// <q^2> = (1-r^2)<q^2>_V + b/m, <p^2> = (1-r^2)<p^2>_V + m a,
/// <qp+pq> = (1-r^2)<qp+pq>_V + c. Throws ConsistencyError if
/// 4ab - c^2 < 0, since the map then has no fluctuation factor.
EvolvedMoments propagate_moments(const GaussianState& state_V,
                                 const MapCoefficients& map, double m,
                                 double hbar);

Real quadratic_form_I(const Real& lambda, const Real& beta,
                      const GaussianState& state_V, const MapCoefficients& map,
                      double m, double hbar);

}  // namespace qbm
