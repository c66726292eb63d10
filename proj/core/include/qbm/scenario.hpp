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
/// The two headline experiments: build the violating initial state under
/// the high-temperature occupation, and certify positivity under the
/// zero-point-inclusive one on the same time grid.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qbm/errors.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/params.hpp"
#include "qbm/positivity.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

/// No violating state exists at the requested time.
class NoViolationError : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// Pure Gaussian state with <qp+pq>_V = 3kT/alpha, <q^2>_V = (s+ + s-)/2
/// and <p^2>_V fixed by purity. Throws NoViolationError unless a > 0 and
/// the roots s+- are real, distinct and positive on average.
GaussianState build_chi(const MapCoefficients& map,
                        const PhysicalParams& params);

/// Same, with HighT coefficients computed at t_prime.
GaussianState build_chi(double t_prime, const PhysicalParams& params,
                        const QuadratureOptions& options = {});

/// The d1, B and fluctuation-bound hypotheses at one grid time for the constrained
/// <qp+pq>_V = 3kT/alpha, with quadrature errors propagated linearly.
struct ScanPoint {
  double t = 0.0;
  CoefficientSet coeffs;
  double d1 = 0.0;
  double err_d1 = 0.0;
  double B = 0.0;  ///< hbar^2 r^2 + c <qp+pq>_V
  double err_B = 0.0;
  double det = 0.0;    ///< 4ab - c^2
  double bound = 0.0;  ///< hbar^2 r^4
  double err_det = 0.0;
  /// value / propagated error for d1, B, det and bound - det. Infinite
  /// when the error estimate is zero.
  double ratio_d1 = 0.0;
  double ratio_B = 0.0;
  double ratio_det = 0.0;
  double ratio_bound = 0.0;
  bool qualifies = false;
};

struct ViolationSearch {
  std::vector<ScanPoint> scan;
  std::optional<std::size_t> index;  ///< Largest qualifying grid point.
  std::size_t best_index = 0;        ///< Best point when none qualifies.
  std::optional<double> t_prime() const {
    if (!index) return std::nullopt;
    return scan[*index].t;
  }
};

struct ScenarioOptions {
  QuadratureOptions quadrature;
  double margin_factor = 10.0;
  /// Model compared against HighT: Uniform or Exact.
  OccupationModel comparison = OccupationModel::Uniform;
  unsigned threads = 0;
};

/// Requires a strictly increasing grid in (0, 0.1 / alpha]. Points where
/// any of d1, B, det or bound - det fails to exceed margin_factor times
/// its propagated error do not qualify.
ViolationSearch find_violation_time(const PhysicalParams& params,
                                    std::span<const double> grid,
                                    OccupationModel model,
                                    const ScenarioOptions& options = {});

/// Per grid time, both verdicts for one model.
struct ModelPoint {
  double t = 0.0;
  CoefficientSet coeffs;
  double gap31 = 0.0;
  CorollaryReport corollary;
  /// Theorem with the constructed state, when that state exists.
  std::optional<TheoremReport> theorem;
};

struct ScenarioResult {
  PhysicalParams params;
  std::vector<double> grid;
  OccupationModel comparison = OccupationModel::Uniform;
  ViolationSearch search;
  std::optional<double> t_prime;
  std::optional<GaussianState> chi;
  std::optional<TheoremReport> theorem;
  std::optional<UncertaintyCheck> uncertainty;
  std::vector<ModelPoint> high_t;
  std::vector<ModelPoint> corollary_model;
  bool corollary_all_pass = false;
  /// No (t, model) had both the theorem and the corollary firing.
  bool mutual_exclusion = true;
};

/// Throws ConsistencyError if the qualifying time fails a theorem
/// condition after the state is built, or if both verdicts fire at once.
ScenarioResult run_scenario(const PhysicalParams& params,
                            std::span<const double> grid,
                            const ScenarioOptions& options = {});

}  // namespace qbm
