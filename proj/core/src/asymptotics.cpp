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

#include "qbm/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

void check_time(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw DomainError("asymptotic expansions need t > 0");
  }
}

}  // namespace

AsymptoticSet hight_leading(double t, const PhysicalParams& params) {
  check_time(t);
  const double kappa = derived_constants(params).kappa;
  const double a = params.alpha;
  const double s = params.kT() * kappa * a;
  AsymptoticSet out;
  out.t = t;
  out.model = OccupationModel::HighT;
  out.X_lead = 0.25 * s * t * t * t * t;
  out.Xdot_lead = s * t * t * t;
  out.Y_lead = s * t * t;
  out.one_minus_R2_lead = kappa * a * a * t * t * t / 6.0;
  const double d = params.hbar * out.one_minus_R2_lead;
  out.gap31_lead = -d * d;
  return out;
}

AsymptoticSet uniform_leading(double t, const PhysicalParams& params) {
  check_time(t);
  const double a = params.alpha;
  if (a * t >= 1.0) {
    throw RegimeError("zero-point expansion needs alpha t < 1");
  }
  const double kappa = derived_constants(params).kappa;
  const double hbar = params.hbar;
  const double base = std::numbers::pi * params.kT() / (hbar * a) -
                      kEulerGamma - std::log(a * t);
  const double L74 = base + 1.75;
  const double L32 = base + 1.5;
  const double pref = kappa * a * a * hbar / std::numbers::pi;
  AsymptoticSet out;
  out.t = t;
  out.model = OccupationModel::Uniform;
  out.X_lead = 0.25 * pref * L74 * t * t * t * t;
  out.Xdot_lead = pref * L32 * t * t * t;
  out.Y_lead = pref * L32 * t * t;
  out.one_minus_R2_lead = kappa * a * a * t * t * t / 6.0;
  // 4XY - Xdot^2 = pref^2 t^6 L32 (L74 - L32) = pref^2 t^6 L32 / 4.
  const double t3 = t * t * t;
  const double d = hbar * out.one_minus_R2_lead;
  out.gap31_lead = 0.25 * pref * pref * t3 * t3 * L32 - d * d;
  return out;
}

double gap31(const CoefficientSet& coeffs, double hbar) {
  const double d = hbar * coeffs.one_minus_R2;
  return coeffs.fluct_det - d * d;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("line fit needs two equally long samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("line fit needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

LinearFit fit_power_law(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw DomainError("sample sizes differ");
  std::vector<double> lx(t.size()), ly(y.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || y[i] == 0.0) {
      throw DomainError("power-law fit needs t > 0 and y != 0");
    }
    lx[i] = std::log(t[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  return fit_line(lx, ly);
}

bool approaches_one_monotonically(std::span<const double> ratios,
                                  double slack) {
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (std::abs(ratios[i] - 1.0) > std::abs(ratios[i - 1] - 1.0) + slack) {
      return false;
    }
  }
  return true;
}

}  // namespace qbm
