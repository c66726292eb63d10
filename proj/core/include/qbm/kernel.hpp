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
/// The memory kernel A(t) of the damped oscillator and the dissipation
/// function R^2(t) = A'(t)^2 - A(t) A''(t).
///
/// A(t) is a sum of three exponential modes. Near t = 0 the closed form
/// suffers cancellation, so for rho t <= 1 (rho the largest mode rate)
/// everything is evaluated from the Taylor moments A^(n)(0), which obey a
/// three-term recurrence.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include "qbm/params.hpp"

namespace qbm {

/// A, A', A'' at one time.
struct KernelDerivatives {
  double A;
  double dA;
  double d2A;
};

/// R^2 and 1 - R^2. The complement is computed directly, not as 1 - R2.
struct Dissipation {
  double R2;
  double one_minus_R2;
};

/// One exponential mode: weight * exp(rate * t).
struct KernelMode {
  std::complex<double> rate;
  std::complex<double> weight;
};

class Kernel {
 public:
  /// Number of Taylor moments kept.
  static constexpr std::size_t kMoments = 44;

  explicit Kernel(const PhysicalParams& params);

  const PhysicalParams& params() const noexcept { return params_; }

  /// Modes ordered as (real, Omega-upper, Omega-lower).
  const std::array<KernelMode, 3>& modes() const noexcept { return modes_; }

  /// A^(n)(0) for n < kMoments.
  std::span<const double> moments() const noexcept { return moments_; }

  /// max |rate|.
  double spectral_radius() const noexcept { return rho_; }

  /// True when t is evaluated from the Taylor series.
  bool uses_series(double t) const noexcept { return rho_ * t <= 1.0; }

  /// Throws DomainError for t < 0 or non-finite t.
  KernelDerivatives derivatives(double t) const;

  /// Throws RegimeError if R^2 leaves [0, 1] beyond rounding.
  Dissipation dissipation(double t) const;

 private:
  PhysicalParams params_;
  std::array<KernelMode, 3> modes_{};
  std::array<double, kMoments> moments_{};
  // Taylor coefficients of 1 - R^2 (index = power of t).
  std::array<double, kMoments> complement_{};
  double rho_ = 0.0;
};

double kernel_A(double t, const PhysicalParams& params);
KernelDerivatives kernel_derivatives(double t, const PhysicalParams& params);
Dissipation dissipation_R2(double t, const PhysicalParams& params);

/// exp(z) - 1 without cancellation for small |z|.
std::complex<double> expm1(std::complex<double> z);

}  // namespace qbm
