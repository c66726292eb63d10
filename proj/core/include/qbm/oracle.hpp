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
/// Brute-force reference evaluation of X, Xdot, Y.
///
/// Shares no numerical path with the spectral module: the inner Fourier
/// integrals are done by composite Gauss-Legendre over the closed-form
/// kernel, Xdot uses the time-derivative form 2 Re(conj(F) e^{iwt} A(t)),
/// and the outer integral runs over fixed panels with a geometric
/// extrapolation of the tail. Slow; meant for tests and cross-checks.

#include <cstddef>
#include <utility>
#include <vector>

#include "qbm/params.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

struct OracleResolution {
  std::size_t gauss_order = 16;
  double density = 1.0;    ///< Panel-count multiplier.
  double tail_tol = 1e-10;  ///< Stop when a doubling adds less than this.
  double tail_reach = 1000.0;  ///< Integrate at least up to w t = tail_reach.
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    std::size_t n);

/// fluct_det is 4XY - Xdot^2 formed directly; err_* hold the magnitude of
/// the extrapolated tail.
CoefficientSet oracle_coefficients(double t, OccupationModel model,
                                   const PhysicalParams& params,
                                   const OracleResolution& resolution = {});

}  // namespace qbm
