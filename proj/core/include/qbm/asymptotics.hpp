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
/// Leading small-t behaviour of the diffusion coefficients and helpers
/// for validating it numerically (ratio trends and log-log fits).

#include <span>

#include "qbm/params.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

/// Euler's constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct AsymptoticSet {
  double t = 0.0;
  OccupationModel model = OccupationModel::HighT;
  double X_lead = 0.0;
  double Xdot_lead = 0.0;
  double Y_lead = 0.0;
  double one_minus_R2_lead = 0.0;
  /// Leading 4XY - Xdot^2 - hbar^2 (1 - R^2)^2.
  double gap31_lead = 0.0;
};

/// X = kT kappa alpha t^4 / 4, Xdot = kT kappa alpha t^3,
/// Y = kT kappa alpha t^2, 1 - R^2 = kappa alpha^2 t^3 / 6.
/// The fluctuation terms cancel in 4XY - Xdot^2 at this order, so
/// gap31_lead = -(hbar alpha^2 t^3 kappa / 6)^2.
/// The caller owns the validity regime (alpha t << 1).
AsymptoticSet hight_leading(double t, const PhysicalParams& params);

/// With L(c) = pi kT / (hbar alpha) + c - gamma_E - ln(alpha t):
/// X = kappa alpha^2 hbar / (4 pi) L(7/4) t^4,
/// Xdot = kappa alpha^2 hbar / pi L(3/2) t^3,
/// Y = kappa alpha^2 hbar / pi L(3/2) t^2, 1 - R^2 as in the HighT case.
/// Throws RegimeError if alpha t >= 1.
AsymptoticSet uniform_leading(double t, const PhysicalParams& params);

/// 4XY - Xdot^2 - hbar^2 (1 - R^2)^2, using the cancellation-free
/// fluctuation determinant.
double gap31(const CoefficientSet& coeffs, double hbar);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares line y = slope x + intercept. Needs >= 2 distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of ln|y| against ln t; the slope is the power-law exponent.
LinearFit fit_power_law(std::span<const double> t, std::span<const double> y);

/// True if |ratio - 1| is non-increasing along the sequence (ordered from
/// the largest t to the smallest), allowing `slack` for quadrature noise.
bool approaches_one_monotonically(std::span<const double> ratios,
                                  double slack = 0.0);

}  // namespace qbm
