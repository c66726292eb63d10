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
/// Non-positivity theorem check with its witness, and the Lindblad-form
/// positivity test with the explicit 2x2 decomposition.
///
/// Notation: P = <qp + pq>_V, B = hbar^2 r^2 + c P,
/// d1 = B^2 / 4 - ab (hbar^2 + P^2), s+- = (B/2 +- sqrt(d1)) / (2 m a).
/// The theorem asserts rho(t) is not positive when
///   d1_positive         d1 > 0
///   B_positive          B > 0
///   purity              <q^2>_V <p^2>_V = (P^2 + hbar^2) / 4
///   q2_between_roots    <q^2>_V in (s-, s+)
///   roots_well_defined  a > 0, 0 <= s- < s+
///   fluctuation_bound   0 <= 4ab - c^2 < hbar^2 r^4
/// all hold.

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qbm/gaussian.hpp"
#include "qbm/real.hpp"
#include "qbm/spectral.hpp"

namespace qbm {

/// One hypothesis. `margin` is (value - threshold) in units of the
/// condition's own scale; positive means satisfied with room to spare.
struct ConditionResult {
  std::string_view name;
  bool holds = false;
  double value = 0.0;
  double threshold = 0.0;
  double margin = 0.0;
};

/// Quadratic-form witness (lambda, beta_bar) and its value.
struct Witness {
  Real w;  ///< Left side of the w > 0 inequality.
  Real lambda;
  Real beta_bar;
  Real I_value;
  Real residual;        ///< Residual of the quadratic solved by lambda.
  Real residual_scale;  ///< Largest term in that quadratic.
};

struct TheoremReport {
  double t = 0.0;
  bool in_scope = true;
  /// b = 0 makes s- = 0 admissible; reported as an edge case.
  bool edge_b_zero = false;
  double d1 = 0.0;
  double s_minus = 0.0;
  double s_plus = 0.0;
  std::array<ConditionResult, 6> conditions{};  ///< In the order listed above.
  bool all_hold = false;
  /// Set only when all conditions hold.
  std::optional<Witness> witness;
  double uncertainty_lhs = 0.0;
  double uncertainty_rhs = 0.0;

  /// Condition by name; throws std::out_of_range for an unknown name.
  const ConditionResult& cond(std::string_view name) const {
    for (const ConditionResult& c : conditions) {
      if (c.name == name) return c;
    }
    throw std::out_of_range("unknown theorem condition");
  }
};

/// Throws ScopeError for a < 0, b < 0 or r^2 outside [0, 1). a = 0 is
/// reported with in_scope = false and no witness.
TheoremReport theorem_check(const GaussianState& state_V,
                            const MapCoefficients& map, double m, double hbar);

/// Left side of the w > 0 inequality, formed from the V-frame moments.
Real witness_w(const GaussianState& state_V, const MapCoefficients& map,
               double m, double hbar);

/// lambda = (hbar + sqrt(w)) / (2 P2), P2 = (1-r^2)<p^2>_V + m a, and
/// beta_bar the vertex of I in beta. Throws ConsistencyError if w < 0.
Witness witness(const GaussianState& state_V, const MapCoefficients& map,
                double m, double hbar);

struct UncertaintyCheck {
  Real lhs;          ///< (dq)^2 (dp)^2 at t
  Real rhs;          ///< (<qp+pq>^2 + hbar^2 - w) / 4
  Real rhs_strong;   ///< (<qp+pq>^2 + hbar^2) / 4
  bool violated = false;
};

/// Throws ScopeError if the state has non-zero first moments.
UncertaintyCheck uncertainty_violation(const GaussianState& state_V,
                                       const MapCoefficients& map, double m,
                                       double hbar);

struct CorollaryParams {
  double sigma = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  std::complex<double> zeta;
  /// eta xi - |zeta|^2 formed without cancellation, when available.
  std::optional<double> gram;
};

/// sigma = -ln R^2 / (2 hbar^2 (1 - R^2)), eta = m Y, xi = X / m,
/// zeta = -(Xdot + i hbar (1 - R^2)) / 2. Throws DomainError if R^2 <= 0.
CorollaryParams associate_corollary_params(const CoefficientSet& coeffs,
                                           double m, double hbar);

/// One Lindblad pair; the coefficient matrix is sum_n v_n v_n^dagger with
/// v_n = conj(a_n, b_n).
struct LindbladPair {
  std::complex<double> a;
  std::complex<double> b;
};

/// Factors [[eta, zeta], [conj(zeta), xi]] by pivoted Cholesky.
/// Throws NotDecomposableError if the matrix is not positive semidefinite.
std::vector<LindbladPair> lindblad_decompose(double eta, double xi,
                                             std::complex<double> zeta);

struct CorollaryReport {
  double t = 0.0;
  double sigma = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  std::complex<double> zeta;
  double gram = 0.0;  ///< eta xi - |zeta|^2
  bool passes = false;
  double margin_sigma = 0.0;
  double margin_eta = 0.0;
  double margin_xi = 0.0;
  double margin_gram = 0.0;  ///< gram / max(eta xi, |zeta|^2)
  std::vector<LindbladPair> decomposition;
};

CorollaryReport corollary_check(double sigma, double eta, double xi,
                                std::complex<double> zeta);
CorollaryReport corollary_check(const CorollaryParams& params);

}  // namespace qbm
