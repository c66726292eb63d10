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

#include <cmath>
#include <random>

#include "qbm/errors.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/scenario.hpp"
#include "qbm/spectral.hpp"
#include "test_support.hpp"

namespace qbm {
namespace {

using qbm::testing::default_params;

constexpr double kHbar = 1.0;

// Random physical state: covariance with determinant >= hbar^2 / 4.
GaussianState random_state(std::mt19937_64& rng, bool pure) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Real q2 = std::pow(10.0, -2.0 + 4.0 * u(rng));
  const Real cqp = (u(rng) - 0.5) * 4.0;
  const Real excess = pure ? Real(0) : Real(u(rng));
  const Real p2 = (kHbar * kHbar / 4 + cqp * cqp + excess) / q2;
  return GaussianState::centered(q2, p2, 2 * cqp);
}

MapCoefficients random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MapCoefficients m;
  m.a = u(rng);
  m.b = u(rng);
  m.c = (u(rng) - 0.5) * 2 * sqrt(m.a * m.b);
  m.r2 = 0.9 * u(rng);
  return m;
}

TEST(GaussianState, GroundStateIsPure) {
  const GaussianState g = GaussianState::ground_state(default_params());
  EXPECT_TRUE(g.is_pure(kHbar));
  EXPECT_NEAR(to_double(g.cqq), 0.5, 1e-15);
  EXPECT_NEAR(to_double(g.cpp), 0.5, 1e-15);
  EXPECT_NO_THROW(g.validate(kHbar));
}

TEST(GaussianState, ValidateRejectsUnphysical) {
  EXPECT_THROW(GaussianState::centered(1, 0.1, 0).validate(kHbar),
               DomainError);
  EXPECT_THROW(GaussianState::centered(-1, 1, 0).validate(kHbar),
               DomainError);
}

TEST(AssociateTheoremParams, ZeroAtZeroTime) {
  const CoefficientSet c =
      coefficients(0.0, OccupationModel::HighT, default_params());
  const MapCoefficients m = associate_theorem_params(c);
  EXPECT_EQ(m.a, 0);
  EXPECT_EQ(m.b, 0);
  EXPECT_EQ(m.c, 0);
  EXPECT_EQ(m.r2, 0);
}

TEST(AssociateTheoremParams, CarriesIndependentDeterminant) {
  const CoefficientSet c =
      coefficients(1e-6, OccupationModel::HighT, default_params());
  const MapCoefficients m = associate_theorem_params(c);
  EXPECT_EQ(to_double(m.a), c.Y);
  EXPECT_EQ(to_double(m.c), c.Xdot);
  EXPECT_NEAR(to_double(m.b), c.X, 1e-15 * c.X);
  EXPECT_NEAR(to_double(m.fluct_det()), c.fluct_det,
              1e-12 * std::abs(c.fluct_det));
  EXPECT_EQ(to_double(m.r2), c.one_minus_R2);
}

TEST(AssociateTheoremParams, Errors) {
  CoefficientSet c;
  c.X = 1.0;
  c.Y = 1.0;
  c.Xdot = 1.0;
  c.fluct_det = 3.0;
  c.one_minus_R2 = 1.0;
  EXPECT_THROW(associate_theorem_params(c), RegimeError);
  c.one_minus_R2 = 0.5;
  c.fluct_det = 2.0;
  EXPECT_THROW(associate_theorem_params(c), ConsistencyError);
}

TEST(PropagateMoments, IdentityMap) {
  std::mt19937_64 rng(1);
  const GaussianState s = random_state(rng, false);
  const EvolvedMoments e = propagate_moments(s, MapCoefficients{}, 1.3, kHbar);
  EXPECT_EQ(e.q2, s.q2());
  EXPECT_EQ(e.p2, s.p2());
  EXPECT_EQ(e.qp_anti, s.qp_anti());
}

TEST(PropagateMoments, AffineInState) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const GaussianState s1 = random_state(rng, false);
    const GaussianState s2 = random_state(rng, false);
    const MapCoefficients map = random_map(rng);
    const Real w = 0.3;
    const GaussianState mix = GaussianState::centered(
        w * s1.q2() + (1 - w) * s2.q2(), w * s1.p2() + (1 - w) * s2.p2(),
        w * s1.qp_anti() + (1 - w) * s2.qp_anti());
    const EvolvedMoments e1 = propagate_moments(s1, map, 2.0, kHbar);
    const EvolvedMoments e2 = propagate_moments(s2, map, 2.0, kHbar);
    const EvolvedMoments em = propagate_moments(mix, map, 2.0, kHbar);
    EXPECT_LT(abs(em.q2 - (w * e1.q2 + (1 - w) * e2.q2)), 1e-80);
    EXPECT_LT(abs(em.p2 - (w * e1.p2 + (1 - w) * e2.p2)), 1e-80);
    EXPECT_LT(abs(em.qp_anti - (w * e1.qp_anti + (1 - w) * e2.qp_anti)),
              1e-80);
    EXPECT_GE(em.q2, map.damping() * mix.q2());
  }
}

TEST(PropagateMoments, RejectsNonFactorisableMap) {
  MapCoefficients map;
  map.a = 1;
  map.b = 1;
  map.c = 3;
  EXPECT_THROW(
      propagate_moments(GaussianState::centered(1, 1, 0), map, 1.0, kHbar),
      ConsistencyError);
}

TEST(QuadraticForm, OriginGivesEvolvedPositionMoment) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const GaussianState s = random_state(rng, false);
    const MapCoefficients map = random_map(rng);
    const EvolvedMoments e = propagate_moments(s, map, 0.7, kHbar);
    const Real I = quadratic_form_I(0, 0, s, map, 0.7, kHbar);
    EXPECT_EQ(I, e.q2);
    EXPECT_GT(I, 0);
  }
}

TEST(QuadraticForm, VertexIsMinimumOverBeta) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const GaussianState s = random_state(rng, false);
    const MapCoefficients map = random_map(rng);
    const double m = 1.5;
    const EvolvedMoments e = propagate_moments(s, map, m, kHbar);
    const Real lambda = 0.37;
    const Real beta_v = -e.qp_anti / (2 * e.p2);
    const Real closed = lambda * lambda * e.p2 + e.q2 - kHbar * lambda -
                        e.qp_anti * e.qp_anti / (4 * e.p2);
    const Real at_vertex = quadratic_form_I(lambda, beta_v, s, map, m, kHbar);
    EXPECT_LE(abs(at_vertex - closed), 1e-12 * abs(closed));
    for (double d : {-1e-3, 1e-3}) {
      EXPECT_GT(quadratic_form_I(lambda, beta_v + d, s, map, m, kHbar),
                at_vertex);
    }
  }
}

TEST(QuadraticForm, PureStateMinimumIsZero) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const GaussianState s = random_state(rng, true);
    const MapCoefficients zero{};
    const Real lambda = kHbar / (2 * s.p2());
    const Real beta = -s.qp_anti() / (2 * s.p2());
    const Real I = quadratic_form_I(lambda, beta, s, zero, 1.0, kHbar);
    EXPECT_LT(abs(I), 1e-60 * s.q2());
  }
}

TEST(QuadraticForm, MixedStateMinimumIsPositive) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    const GaussianState s = random_state(rng, false);
    const MapCoefficients zero{};
    const Real lambda = kHbar / (2 * s.p2());
    const Real beta = -s.qp_anti() / (2 * s.p2());
    const Real I = quadratic_form_I(lambda, beta, s, zero, 1.0, kHbar);
    EXPECT_GE(I, 0);
    EXPECT_LT(abs(I - s.uncertainty_defect(kHbar) / s.p2()), 1e-60);
  }
}

TEST(ConstructedState, MatchesWignerExponent) {
  // exp[-(2/hbar^2)(A q^2 + s p^2 - P p q)] = exp[-x^T S^{-1} x / 2] with
  // A = (hbar^2 + P^2) / (4 s) and P = 3kT/alpha.
  const PhysicalParams p = default_params();
  const GaussianState chi = build_chi(4e-7, p);
  const Real h2 = Real(p.hbar) * p.hbar;
  const Real P = Real(3) * p.kT() / p.alpha;
  const Real s = chi.cqq;
  const Real det = chi.cqq * chi.cpp - chi.cqp_sym * chi.cqp_sym;
  const Real inv_qq = chi.cpp / det;
  const Real inv_pp = chi.cqq / det;
  const Real inv_qp = -chi.cqp_sym / det;
  const Real tol = Real(1e-60);
  EXPECT_LT(abs(inv_qq - 4 * (h2 + P * P) / (4 * s) / h2), tol * abs(inv_qq));
  EXPECT_LT(abs(inv_pp - 4 * s / h2), tol * abs(inv_pp));
  EXPECT_LT(abs(inv_qp - (-2 * P / h2)), tol * abs(inv_qp));
  // Normalisation 1/(pi hbar) requires det = hbar^2 / 4.
  EXPECT_LT(abs(det - h2 / 4), tol);
  EXPECT_EQ(chi.mean_q, 0);
  EXPECT_EQ(chi.mean_p, 0);
}

}  // namespace
}  // namespace qbm
