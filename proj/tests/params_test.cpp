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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "qbm/errors.hpp"
#include "qbm/params.hpp"
#include "test_support.hpp"

namespace qbm {
namespace {

using boost::multiprecision::cpp_bin_float_50;
using testing::default_params;

// (n + 1/2) = 1 / (e^x - 1) + 1/2 with x = hbar w / kT, in 50 digits.
double bose_factor_oracle(double x) {
  const cpp_bin_float_50 X = x;
  const cpp_bin_float_50 f = 1 / (exp(X) - 1) + cpp_bin_float_50(0.5);
  return f.convert_to<double>();
}

TEST(Occupation, ExactAtZeroTemperatureIsOneHalf) {
  PhysicalParams p = default_params();
  p.T = 0.0;
  for (double w : {1e-6, 0.3, 1.0, 1e4}) {
    EXPECT_EQ(occupation_factor(w, OccupationModel::Exact, p), 0.5);
  }
}

TEST(Occupation, UniformMinusHighTIsOneHalf) {
  PhysicalParams p = default_params();
  for (double T : {1e-3, 1.0, 100.0, 1e6}) {
    p.T = T;
    for (double w : {1e-5, 0.1, 7.0, 1e3}) {
      const double d = occupation_factor(w, OccupationModel::Uniform, p) -
                       occupation_factor(w, OccupationModel::HighT, p);
      EXPECT_NEAR(d, 0.5, 1e-12 * occupation_factor(w, OccupationModel::Uniform, p));
    }
  }
}

TEST(Occupation, ExactAtThermalFrequency) {
  const PhysicalParams p = default_params();
  const double f = occupation_factor(p.kT() / p.hbar, OccupationModel::Exact, p);
  EXPECT_NEAR(f, bose_factor_oracle(1.0), 1e-14);
  EXPECT_NEAR(f, 1.0820, 5e-5);
}

TEST(Occupation, ExactRelativeAccuracyAcrossRange) {
  const PhysicalParams p = default_params();
  for (double x = 1e-8; x <= 1e3; x *= 1.7) {
    const double w = x * p.kT() / p.hbar;
    const double f = occupation_factor(w, OccupationModel::Exact, p);
    EXPECT_LE(testing::rel_diff(f, bose_factor_oracle(x)), 1e-12) << "x=" << x;
  }
}

TEST(Occupation, Ordering) {
  PhysicalParams p = default_params();
  for (double T : {0.01, 1.0, 100.0}) {
    p.T = T;
    for (double w = 1e-4; w < 1e4; w *= 3.1) {
      const double ex = occupation_factor(w, OccupationModel::Exact, p);
      const double ht = occupation_factor(w, OccupationModel::HighT, p);
      const double un = occupation_factor(w, OccupationModel::Uniform, p);
      EXPECT_GT(ex - ht, 0.0);
      EXPECT_LE(ex - ht, 0.5 * (1.0 + 1e-12));
      EXPECT_GE(un, ex);
    }
  }
}

TEST(Occupation, ExactApproachesUniformLinearly) {
  const PhysicalParams p = default_params();
  for (double x : {1e-2, 1e-3, 1e-4}) {
    const double w = x * p.kT() / p.hbar;
    const double un = occupation_factor(w, OccupationModel::Uniform, p);
    const double ex = occupation_factor(w, OccupationModel::Exact, p);
    // 1/x + 1/2 - (1/x + x/12 - x^3/720 + ...) = 1/2 - x/12 + O(x^3), so
    // the relative difference is x/2 + O(x^2).
    EXPECT_NEAR(un - ex, 0.5 - x / 12.0, x * x * x);
    EXPECT_NEAR((un - ex) / un, 0.5 * x, x * x);
  }
}

TEST(Occupation, StrictlyDecreasing) {
  const PhysicalParams p = default_params();
  for (OccupationModel m : {OccupationModel::Exact, OccupationModel::HighT,
                            OccupationModel::Uniform}) {
    double prev = occupation_factor(1e-6, m, p);
    for (double w = 2e-6; w < 1e6; w *= 2.0) {
      const double f = occupation_factor(w, m, p);
      // coth(x) / 2 rounds to exactly 1/2 once e^{-2x} < eps.
      if (m == OccupationModel::Exact && p.hbar * w > 30 * p.kT()) {
        EXPECT_LE(f, prev) << to_string(m) << " w=" << w;
      } else {
        EXPECT_LT(f, prev) << to_string(m) << " w=" << w;
      }
      prev = f;
    }
  }
}

TEST(Occupation, Errors) {
  PhysicalParams p = default_params();
  EXPECT_THROW(occupation_factor(0.0, OccupationModel::Exact, p), DomainError);
  EXPECT_THROW(occupation_factor(-1.0, OccupationModel::Uniform, p),
               DomainError);
  p.T = 0.0;
  EXPECT_THROW(occupation_factor(1.0, OccupationModel::HighT, p), DomainError);
  EXPECT_NO_THROW(occupation_factor(1.0, OccupationModel::Uniform, p));
}

TEST(Occupation, ModelNames) {
  for (OccupationModel m : {OccupationModel::Exact, OccupationModel::HighT,
                            OccupationModel::Uniform}) {
    EXPECT_EQ(parse_occupation_model(to_string(m)), m);
  }
  EXPECT_THROW(parse_occupation_model("hight"), DomainError);
}

TEST(DerivedConstants, DefaultFixture) {
  const DerivedConstants c = derived_constants(default_params());
  // 2 (0.1) ((9.9)^2 + 1) / 100
  EXPECT_NEAR(c.kappa, 0.19802, 1e-15);
  // (9.7)^2 + 1
  EXPECT_NEAR(c.denominator, 95.09, 1e-12);
}

TEST(DerivedConstants, KappaVanishesWithGamma) {
  PhysicalParams p = default_params();
  p.gamma = 1e-12;
  EXPECT_GT(derived_constants(p).kappa, 0.0);
  EXPECT_LT(derived_constants(p).kappa, 1e-11);
  p.gamma = 0.0;
  EXPECT_THROW(derived_constants(p), DomainError);
}

TEST(PhysicalParams, Validation) {
  PhysicalParams p = default_params();
  EXPECT_NO_THROW(p.validate());
  p.gamma = 5.0;  // alpha = 10 < 3 gamma
  EXPECT_THROW(p.validate(), RegimeError);
  p = default_params();
  p.m = -1.0;
  EXPECT_THROW(p.validate(), DomainError);
  p = default_params();
  p.T = -1.0;
  EXPECT_THROW(p.validate(), DomainError);
  p = default_params();
  p.T = 0.0;
  EXPECT_NO_THROW(p.validate());
  p.hbar = std::nan("");
  EXPECT_THROW(p.validate(), DomainError);
}

}  // namespace
}  // namespace qbm
