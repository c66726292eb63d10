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


#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "qbm/errors.hpp"
#include "qbm/oracle.hpp"
#include "qbm/spectral.hpp"
#include "test_support.hpp"

namespace qbm {
namespace {

using qbm::testing::default_params;
using qbm::testing::rel_diff;

TEST(GaussLegendre, WeightsAndExactness) {
  for (std::size_t n : {1u, 5u, 16u, 33u}) {
    const auto [x, w] = gauss_legendre(n);
    ASSERT_EQ(x.size(), n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(Oracle, ZeroAtZeroTime) {
  const CoefficientSet c =
      oracle_coefficients(0.0, OccupationModel::Exact, default_params());
  EXPECT_EQ(c.X, 0.0);
  EXPECT_EQ(c.Xdot, 0.0);
  EXPECT_EQ(c.Y, 0.0);
}

TEST(Oracle, FixturePointMatchesSpectral) {
  const PhysicalParams p = default_params();
  const CoefficientSet o = oracle_coefficients(0.01, OccupationModel::HighT, p);
  QuadratureOptions q;
  q.rel_tol = 1e-10;
  const CoefficientSet c = coefficients(0.01, OccupationModel::HighT, p, q);
  EXPECT_LE(rel_diff(o.X, c.X), 1e-6);
  EXPECT_LE(rel_diff(o.Xdot, c.Xdot), 1e-6);
  EXPECT_LE(rel_diff(o.Y, c.Y), 1e-6);
}

TEST(Oracle, SelfConvergence) {
  const PhysicalParams p = default_params();
  OracleResolution fine;
  fine.density = 2.0;
  fine.gauss_order = 24;
  fine.tail_tol = 1e-12;
  for (OccupationModel m : {OccupationModel::Exact, OccupationModel::HighT,
                            OccupationModel::Uniform}) {
    for (double t : {1e-3, 0.3}) {
      const CoefficientSet a = oracle_coefficients(t, m, p);
      const CoefficientSet b = oracle_coefficients(t, m, p, fine);
      EXPECT_LE(rel_diff(a.X, b.X), 1e-8) << to_string(m) << " t=" << t;
      EXPECT_LE(rel_diff(a.Xdot, b.Xdot), 1e-8) << to_string(m) << " t=" << t;
      EXPECT_LE(rel_diff(a.Y, b.Y), 1e-8) << to_string(m) << " t=" << t;
    }
  }
}

TEST(Oracle, RejectsNegativeTime) {
  EXPECT_THROW(oracle_coefficients(-1.0, OccupationModel::HighT,
                                   default_params()),
               DomainError);
}

}  // namespace
}  // namespace qbm
