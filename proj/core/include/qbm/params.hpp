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
/// Physical parameters of the oscillator and its Drude-regularised bath,
/// and the constants derived from them.
///
/// Units are natural (hbar = k = m = 1) unless the fields are overridden.

#include <string_view>

namespace qbm {

/// Occupation model used in the spectral integrals.
enum class OccupationModel {
  /// Bose-Einstein occupation, (n + 1/2) = coth(hbar w / 2kT) / 2.
  Exact,
  /// High-temperature limit, (n + 1/2) = kT / (hbar w).
  HighT,
  /// Uniform expansion, (n + 1/2) = kT / (hbar w) + 1/2.
  Uniform,
};

std::string_view to_string(OccupationModel model) noexcept;

/// Parses "exact", "high_t" or "uniform". Throws DomainError otherwise.
OccupationModel parse_occupation_model(std::string_view name);

/// Oscillator and bath parameters. Defaults are the reference fixture
/// alpha = 10, Gamma = 0.1, Omega = 1, T = 100.
struct PhysicalParams {
  double m = 1.0;       ///< Oscillator mass.
  double omega = 1.0;   ///< Renormalised oscillator frequency Omega.
  double gamma = 0.1;   ///< Damping rate Gamma.
  double alpha = 10.0;  ///< Drude cutoff frequency.
  double T = 100.0;     ///< Bath temperature.
  double hbar = 1.0;
  double k = 1.0;  ///< Boltzmann constant.

  double kT() const noexcept { return k * T; }

  /// Throws DomainError for non-finite or non-positive values (T may be 0)
  /// and RegimeError unless alpha >= 3 Gamma.
  void validate() const;
};

/// Constants fixed by the parameters.
struct DerivedConstants {
  double kappa;        ///< Coupling: 2 Gamma ((alpha - Gamma)^2 + Omega^2) / alpha^2.
  double denominator;  ///< (alpha - 3 Gamma)^2 + Omega^2.
};

/// Validates `params` and returns the derived constants.
DerivedConstants derived_constants(const PhysicalParams& params);

/// The occupation factor (n + 1/2) at frequency w > 0.
double occupation_factor(double w, OccupationModel model,
                         const PhysicalParams& params);

/// w (n + 1/2), which stays finite as w -> 0 and is what the spectral
/// integrands use.
double occupation_weight(double w, OccupationModel model,
                         const PhysicalParams& params);

}  // namespace qbm
