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

#include "qbm/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "qbm/errors.hpp"

namespace qbm {

std::complex<double> expm1(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  // exp(x) cos(y) - 1 = expm1(x) cos(y) - 2 sin^2(y/2)
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

namespace {

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
}

}  // namespace

Kernel::Kernel(const PhysicalParams& params) : params_(params) {
  const DerivedConstants dc = derived_constants(params);
  const double a = params.alpha;
  const double g = params.gamma;
  const double o = params.omega;
  const double d = dc.denominator;
  const double n1 = (a - 2.0 * g) * (a - 2.0 * g) + o * o - g * g;

  using C = std::complex<double>;
  modes_[0] = {C(-(a - 2.0 * g), 0.0), C(2.0 * g / d, 0.0)};
  modes_[1] = {C(-g, o), C(-g / d, -n1 / (2.0 * o * d))};
  modes_[2] = {C(-g, -o), C(-g / d, n1 / (2.0 * o * d))};
  rho_ = std::max(a - 2.0 * g, std::hypot(g, o));

  // A''' + alpha A'' + c1 A' + c0 A = 0 with A(0) = 0, A'(0) = 1, A''(0) = 0.
  const double c1 = g * g + o * o + 2.0 * g * (a - 2.0 * g);
  const double c0 = (a - 2.0 * g) * (g * g + o * o);
  moments_[0] = 0.0;
  moments_[1] = 1.0;
  moments_[2] = 0.0;
  for (std::size_t n = 3; n < kMoments; ++n) {
    moments_[n] =
        -(a * moments_[n - 1] + c1 * moments_[n - 2] + c0 * moments_[n - 3]);
  }

  // R^2 = sum_k r_k t^k / k! with
  // r_k = sum_{i+j=k} C(k,i) (M_{i+1} M_{j+1} - M_i M_{j+2}).
  // Stored as the coefficient of t^k in 1 - R^2, i.e. -r_k / k! for k >= 1.
  complement_[0] = 0.0;
  for (std::size_t k = 1; k + 2 < kMoments; ++k) {
    double binom = 1.0;
    double r = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      const std::size_t j = k - i;
      r += binom * (moments_[i + 1] * moments_[j + 1] -
                    moments_[i] * moments_[j + 2]);
      binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
    }
    double fact = 1.0;
    for (std::size_t q = 2; q <= k; ++q) fact *= static_cast<double>(q);
    complement_[k] = -r / fact;
  }
}

KernelDerivatives Kernel::derivatives(double t) const {
  check_time(t);
  KernelDerivatives out{0.0, 0.0, 0.0};
  if (uses_series(t)) {
    // p = t^n / n!
    double p = 1.0;
    for (std::size_t n = 0; n + 2 < kMoments; ++n) {
      out.A += moments_[n] * p;
      out.dA += moments_[n + 1] * p;
      out.d2A += moments_[n + 2] * p;
      p *= t / static_cast<double>(n + 1);
    }
    return out;
  }
  std::complex<double> A, dA, d2A;
  for (const KernelMode& mode : modes_) {
    const std::complex<double> e = mode.weight * std::exp(mode.rate * t);
    A += e;
    dA += mode.rate * e;
    d2A += mode.rate * mode.rate * e;
  }
  return {A.real(), dA.real(), d2A.real()};
}

Dissipation Kernel::dissipation(double t) const {
  check_time(t);
  double complement = 0.0;
  if (uses_series(t)) {
    // Horner from the highest power.
    for (std::size_t k = kMoments - 3; k >= 1; --k) {
      complement = (complement + complement_[k]) * t;
      if (k == 1) break;
    }
  } else {
    // 1 - R^2 = sum_{j<k} w_j w_k (l_j - l_k)^2 expm1((l_j + l_k) t)
    std::complex<double> sum;
    for (std::size_t j = 0; j < modes_.size(); ++j) {
      for (std::size_t k = j + 1; k < modes_.size(); ++k) {
        const std::complex<double> dl = modes_[j].rate - modes_[k].rate;
        sum += modes_[j].weight * modes_[k].weight * dl * dl *
               expm1((modes_[j].rate + modes_[k].rate) * t);
      }
    }
    complement = sum.real();
  }
  double R2 = 1.0 - complement;
  const KernelDerivatives kd = derivatives(t);
  const double tol = 1e-12 * std::max(1.0, kd.dA * kd.dA);
  if (R2 < -tol) {
    throw RegimeError("R^2 is negative at t = " + std::to_string(t));
  }
  if (complement < -tol) {
    throw RegimeError("R^2 exceeds 1 at t = " + std::to_string(t));
  }
  if (R2 < 0.0) {
    R2 = 0.0;
    complement = 1.0;
  }
  if (complement < 0.0) {
    complement = 0.0;
    R2 = 1.0;
  }
  return {R2, complement};
}

double kernel_A(double t, const PhysicalParams& params) {
  return Kernel(params).derivatives(t).A;
}

KernelDerivatives kernel_derivatives(double t, const PhysicalParams& params) {
  return Kernel(params).derivatives(t);
}

Dissipation dissipation_R2(double t, const PhysicalParams& params) {
  return Kernel(params).dissipation(t);
}

}  // namespace qbm
