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

#include "qbm/params.hpp"

#include <cmath>
#include <string>

#include "qbm/errors.hpp"

namespace qbm {

std::string_view to_string(OccupationModel model) noexcept {
  switch (model) {
    case OccupationModel::Exact:
      return "exact";
    case OccupationModel::HighT:
      return "high_t";
    case OccupationModel::Uniform:
      return "uniform";
  }
  return "unknown";
}

OccupationModel parse_occupation_model(std::string_view name) {
  if (name == "exact") return OccupationModel::Exact;
  if (name == "high_t") return OccupationModel::HighT;
  if (name == "uniform") return OccupationModel::Uniform;
  throw DomainError("unknown occupation model '" + std::string(name) +
                    "' (expected exact, high_t or uniform)");
}

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(m, "m");
  require_positive(omega, "omega");
  require_positive(gamma, "gamma");
  require_positive(alpha, "alpha");
  require_positive(hbar, "hbar");
  require_positive(k, "k");
  if (!std::isfinite(T) || T < 0.0) {
    throw DomainError("T must be finite and non-negative");
  }
  if (alpha < 3.0 * gamma) {
    throw RegimeError("alpha must be at least 3 gamma");
  }
}

DerivedConstants derived_constants(const PhysicalParams& params) {
  params.validate();
  const double a = params.alpha;
  const double g = params.gamma;
  const double o = params.omega;
  DerivedConstants c{};
  c.kappa = 2.0 * g * ((a - g) * (a - g) + o * o) / (a * a);
  c.denominator = (a - 3.0 * g) * (a - 3.0 * g) + o * o;
  return c;
}

namespace {

// x/2 coth(x/2), with the Bernoulli series near zero.
double half_x_coth_half_x(double x) {
  if (x < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 / 12.0 - x2 * x2 / 720.0;
  }
  if (x > 40.0) return 0.5 * x;
  return 0.5 * x / std::tanh(0.5 * x);
}

}  // namespace

double occupation_weight(double w, OccupationModel model,
                         const PhysicalParams& params) {
  if (!std::isfinite(w) || w < 0.0) {
    throw DomainError("frequency must be finite and non-negative");
  }
  const double kT_over_hbar = params.kT() / params.hbar;
  switch (model) {
    case OccupationModel::HighT:
      if (params.T == 0.0) {
        throw DomainError("high-temperature model needs T > 0");
      }
      return kT_over_hbar;
    case OccupationModel::Uniform:
      return kT_over_hbar + 0.5 * w;
    case OccupationModel::Exact:
      if (params.T == 0.0) return 0.5 * w;
      return kT_over_hbar * half_x_coth_half_x(w / kT_over_hbar);
  }
  return 0.0;
}

double occupation_factor(double w, OccupationModel model,
                         const PhysicalParams& params) {
  if (!(w > 0.0)) throw DomainError("occupation factor needs w > 0");
  return occupation_weight(w, model, params) / w;
}

}  // namespace qbm
