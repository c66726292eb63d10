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

#include "qbm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qbm/asymptotics.hpp"
#include "qbm/parallel.hpp"
#include "qbm/real.hpp"

namespace qbm {

namespace {

Real constrained_P(const PhysicalParams& params) {
  return Real(3) * Real(params.kT()) / Real(params.alpha);
}

double safe_ratio(double value, double err) {
  if (err > 0.0) return value / err;
  if (value > 0.0) return std::numeric_limits<double>::infinity();
  return value < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
}

ScanPoint scan_point(const CoefficientSet& c, const PhysicalParams& params,
                     double margin_factor) {
  ScanPoint sp;
  sp.t = c.t;
  sp.coeffs = c;
  const MapCoefficients map = associate_theorem_params(c);
  const Real h = params.hbar;
  const Real h2 = h * h;
  const Real P = constrained_P(params);
  const Real det = map.fluct_det();
  const Real B = h2 * map.r2 + map.c * P;
  const Real d1 = h2 * h2 * map.r2 * map.r2 / 4 +
                  h2 * (map.r2 * map.c * P / 2 - map.a * map.b) -
                  det * P * P / 4;
  const double Pd = to_double(P);
  const double hd2 = params.hbar * params.hbar;
  sp.d1 = to_double(d1);
  sp.B = to_double(B);
  sp.det = to_double(det);
  sp.bound = to_double(h2 * map.r2 * map.r2);
  sp.err_det = c.err_det;
  sp.err_B = std::abs(Pd) * c.err_Xdot;
  sp.err_d1 = hd2 * (0.5 * c.one_minus_R2 * std::abs(Pd) * c.err_Xdot +
                     c.X * c.err_Y + c.Y * c.err_X) +
              0.25 * Pd * Pd * c.err_det;
  sp.ratio_d1 = safe_ratio(sp.d1, sp.err_d1);
  sp.ratio_B = safe_ratio(sp.B, sp.err_B);
  sp.ratio_det = safe_ratio(sp.det, sp.err_det);
  sp.ratio_bound = safe_ratio(sp.bound - sp.det, sp.err_det);
  sp.qualifies = sp.ratio_d1 >= margin_factor && sp.ratio_B >= margin_factor &&
                 sp.ratio_det >= margin_factor &&
                 sp.ratio_bound >= margin_factor;
  return sp;
}

double worst_ratio(const ScanPoint& sp) {
  return std::min({sp.ratio_d1, sp.ratio_B, sp.ratio_det, sp.ratio_bound});
}

void validate_grid(std::span<const double> grid, const PhysicalParams& params) {
  if (grid.empty()) throw DomainError("scenario grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw DomainError("scenario grid points must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("scenario grid must be strictly increasing");
    }
  }
  if (grid.back() > 0.1 / params.alpha * (1.0 + 1e-12)) {
    throw RegimeError("scenario grid must stay below 0.1 / alpha");
  }
}

}  // namespace

GaussianState build_chi(const MapCoefficients& map,
                        const PhysicalParams& params) {
  params.validate();
  if (!(map.a > 0)) throw NoViolationError("a must be positive");
  const Real h = params.hbar;
  const Real h2 = h * h;
  const Real m = params.m;
  const Real P = constrained_P(params);
  const Real B = h2 * map.r2 + map.c * P;
  const Real d1 = h2 * h2 * map.r2 * map.r2 / 4 +
                  h2 * (map.r2 * map.c * P / 2 - map.a * map.b) -
                  map.fluct_det() * P * P / 4;
  if (!(d1 > 0)) throw NoViolationError("roots s+- are not real and distinct");
  const Real s_minus = (B / 2 - sqrt(d1)) / (2 * m * map.a);
  if (s_minus < 0) throw NoViolationError("root s- is negative");
  const Real s_bar = B / (4 * m * map.a);
  return GaussianState::centered(s_bar, (P * P + h2) / (4 * s_bar), P);
}

GaussianState build_chi(double t_prime, const PhysicalParams& params,
                        const QuadratureOptions& options) {
  const CoefficientSet c =
      coefficients(t_prime, OccupationModel::HighT, params, options);
  return build_chi(associate_theorem_params(c), params);
}

ViolationSearch find_violation_time(const PhysicalParams& params,
                                    std::span<const double> grid,
                                    OccupationModel model,
                                    const ScenarioOptions& options) {
  params.validate();
  validate_grid(grid, params);
  ViolationSearch out;
  out.scan = parallel_map(
      grid.size(),
      [&](std::size_t i) {
        const CoefficientSet c =
            coefficients(grid[i], model, params, options.quadrature);
        return scan_point(c, params, options.margin_factor);
      },
      options.threads);
  for (std::size_t i = out.scan.size(); i-- > 0;) {
    if (out.scan[i].qualifies) {
      out.index = i;
      break;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.scan.size(); ++i) {
    const double r = worst_ratio(out.scan[i]);
    if (r > best) {
      best = r;
      out.best_index = i;
    }
  }
  if (out.index) out.best_index = *out.index;
  return out;
}

namespace {

ModelPoint model_point(const CoefficientSet& c, const PhysicalParams& params) {
  ModelPoint mp;
  mp.t = c.t;
  mp.coeffs = c;
  mp.gap31 = gap31(c, params.hbar);
  mp.corollary =
      corollary_check(associate_corollary_params(c, params.m, params.hbar));
  mp.corollary.t = c.t;
  const MapCoefficients map = associate_theorem_params(c);
  try {
    const GaussianState chi = build_chi(map, params);
    TheoremReport rep = theorem_check(chi, map, params.m, params.hbar);
    rep.t = c.t;
    mp.theorem = rep;
  } catch (const NoViolationError&) {
  }
  return mp;
}

}  // namespace

ScenarioResult run_scenario(const PhysicalParams& params,
                            std::span<const double> grid,
                            const ScenarioOptions& options) {
  if (options.comparison == OccupationModel::HighT) {
    throw DomainError("comparison model must include the zero-point term");
  }
  ScenarioResult res;
  res.params = params;
  res.grid.assign(grid.begin(), grid.end());
  res.comparison = options.comparison;
  res.search =
      find_violation_time(params, grid, OccupationModel::HighT, options);

  if (res.search.index) {
    const ScanPoint& sp = res.search.scan[*res.search.index];
    const MapCoefficients map = associate_theorem_params(sp.coeffs);
    const GaussianState chi = build_chi(map, params);
    TheoremReport rep = theorem_check(chi, map, params.m, params.hbar);
    rep.t = sp.t;
    if (!rep.all_hold) {
      throw ConsistencyError(
          "qualifying time fails a theorem condition after building the "
          "state");
    }
    res.t_prime = sp.t;
    res.chi = chi;
    res.theorem = rep;
    res.uncertainty = uncertainty_violation(chi, map, params.m, params.hbar);
  }

  res.high_t = parallel_map(
      grid.size(),
      [&](std::size_t i) {
        return model_point(res.search.scan[i].coeffs, params);
      },
      options.threads);
  res.corollary_model = parallel_map(
      grid.size(),
      [&](std::size_t i) {
        const CoefficientSet c = coefficients(grid[i], options.comparison,
                                              params, options.quadrature);
        return model_point(c, params);
      },
      options.threads);

  res.corollary_all_pass = true;
  for (const ModelPoint& mp : res.corollary_model) {
    res.corollary_all_pass &= mp.corollary.passes;
  }
  for (const auto* group : {&res.high_t, &res.corollary_model}) {
    for (const ModelPoint& mp : *group) {
      if (mp.corollary.passes && mp.theorem && mp.theorem->all_hold) {
        res.mutual_exclusion = false;
      }
    }
  }
  if (!res.mutual_exclusion) {
    throw ConsistencyError(
        "theorem and corollary both fire at the same time and model");
  }
  return res;
}

}  // namespace qbm
