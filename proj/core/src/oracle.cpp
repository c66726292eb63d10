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

#include "qbm/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>

#include "qbm/errors.hpp"
#include "qbm/kernel.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre order must be positive");
  std::vector<double> x(n), w(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

namespace {

class Oracle {
 public:
  Oracle(double t, OccupationModel model, const PhysicalParams& params,
         const OracleResolution& res)
      : t_(t), model_(model), params_(params), res_(res), kernel_(params) {
    std::tie(x_, w_) = gauss_legendre(res.gauss_order);
    A_t_ = kernel_.derivatives(t).A;
  }

  // Weighted {|F|^2, |G|^2, 2 Re(conj(F) e^{iwt} A(t))}.
  std::array<double, 3> integrand(double w, std::size_t n_inner) {
    const Grid& g = grid(n_inner);
    using C = std::complex<double>;
    const std::size_t q = x_.size();
    std::vector<C>& local = scratch_;
    local.resize(q);
    for (std::size_t k = 0; k < q; ++k) {
      local[k] = std::polar(1.0, 0.5 * w * g.h * x_[k]);
    }
    const C rot = std::polar(1.0, w * g.h);
    C F, G;
    C center;
    for (std::size_t p = 0; p < n_inner; ++p) {
      if (p % 32 == 0) {
        center = std::polar(1.0, w * (static_cast<double>(p) + 0.5) * g.h);
      } else {
        center *= rot;
      }
      C fp, gp;
      for (std::size_t k = 0; k < q; ++k) {
        const C z = center * local[k];
        fp += (w_[k] * g.A[p * q + k]) * z;
        gp += (w_[k] * g.dA[p * q + k]) * z;
      }
      F += fp;
      G += gp;
    }
    F *= 0.5 * g.h;
    G *= 0.5 * g.h;
    const double weight = occupation_weight(w, model_, params_) /
                          (params_.alpha * params_.alpha + w * w);
    const C dF = std::polar(A_t_, w * t_);
    return {weight * std::norm(F), weight * std::norm(G),
            2.0 * weight * (std::conj(F) * dF).real()};
  }

  std::size_t inner_panels(double w_max) const {
    const double n = res_.density *
                     std::max({1.0, w_max * t_ / 6.0,
                               0.5 * kernel_.spectral_radius() * t_});
    return static_cast<std::size_t>(std::ceil(n));
  }

  // Sum over [a, b] split into n equal panels.
  std::array<double, 3> panel_sum(double a, double b, std::size_t n) {
    const std::size_t n_inner = inner_panels(b);
    const double h = (b - a) / static_cast<double>(n);
    std::array<quad::detail::CompensatedSum, 3> acc{};
    for (std::size_t p = 0; p < n; ++p) {
      const double c = a + (static_cast<double>(p) + 0.5) * h;
      for (std::size_t k = 0; k < x_.size(); ++k) {
        const std::array<double, 3> y = integrand(c + 0.5 * h * x_[k], n_inner);
        for (std::size_t j = 0; j < 3; ++j) acc[j].add(0.5 * h * w_[k] * y[j]);
      }
    }
    return {acc[0].value(), acc[1].value(), acc[2].value()};
  }

 private:
  struct Grid {
    double h;
    std::vector<double> A;
    std::vector<double> dA;
  };

  const Grid& grid(std::size_t n_inner) {
    auto it = grids_.find(n_inner);
    if (it != grids_.end()) return it->second;
    Grid g;
    g.h = t_ / static_cast<double>(n_inner);
    const std::size_t q = x_.size();
    g.A.resize(n_inner * q);
    g.dA.resize(n_inner * q);
    for (std::size_t p = 0; p < n_inner; ++p) {
      for (std::size_t k = 0; k < q; ++k) {
        const double s = (static_cast<double>(p) + 0.5 + 0.5 * x_[k]) * g.h;
        const KernelDerivatives kd = closed_form(s);
        g.A[p * q + k] = kd.A;
        g.dA[p * q + k] = kd.dA;
      }
    }
    return grids_.emplace(n_inner, std::move(g)).first->second;
  }

  // Direct modal sum in long double; the series path is deliberately not
  // used here.
  KernelDerivatives closed_form(double s) const {
    using CL = std::complex<long double>;
    CL A, dA;
    for (const KernelMode& m : kernel_.modes()) {
      const CL rate(m.rate.real(), m.rate.imag());
      const CL e = CL(m.weight.real(), m.weight.imag()) *
                   std::exp(rate * static_cast<long double>(s));
      A += e;
      dA += rate * e;
    }
    return {static_cast<double>(A.real()), static_cast<double>(dA.real()),
            0.0};
  }

  double t_;
  OccupationModel model_;
  PhysicalParams params_;
  OracleResolution res_;
  Kernel kernel_;
  std::vector<double> x_, w_;
  double A_t_ = 0.0;
  std::map<std::size_t, Grid> grids_;
  std::vector<std::complex<double>> scratch_;
};

}  // namespace

CoefficientSet oracle_coefficients(double t, OccupationModel model,
                                   const PhysicalParams& params,
                                   const OracleResolution& res) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
  const DerivedConstants dc = derived_constants(params);
  const Kernel kernel(params);
  const Dissipation diss = kernel.dissipation(t);
  CoefficientSet out;
  out.t = t;
  out.model = model;
  out.R2 = diss.R2;
  out.one_minus_R2 = diss.one_minus_R2;
  if (t == 0.0) return out;

  Oracle oracle(t, model, params, res);
  std::array<quad::detail::CompensatedSum, 3> total{};
  auto add = [&](const std::array<double, 3>& v) {
    for (std::size_t j = 0; j < 3; ++j) total[j].add(v[j]);
  };
  const double quarter_period = 0.5 * std::numbers::pi / t;
  const double alpha = params.alpha;

  const double b1 = std::min(1.0 / t, 10.0 * alpha);
  const double b2 = std::max(1.0 / t, 10.0 * alpha);
  {
    const double h = std::min({0.5 * params.gamma, 0.25 * params.omega,
                               0.125 * alpha, quarter_period}) /
                     res.density;
    add(oracle.panel_sum(0.0, b1,
                         static_cast<std::size_t>(std::ceil(b1 / h))));
  }
  for (double a = b1; a < b2;) {
    const double b = std::min(2.0 * a, b2);
    const double n = std::max(8.0, (b - a) / quarter_period) * res.density;
    add(oracle.panel_sum(a, b, static_cast<std::size_t>(std::ceil(n))));
    a = b;
  }

  // Doubling tail. Increments of a power-law tail shrink by a fixed ratio,
  // so the remainder beyond the last doubling is summed geometrically.
  const double w_min = std::max(res.tail_reach / t, 20.0 * alpha);
  std::array<double, 3> prev{};
  std::array<double, 3> prev_ratio{-1.0, -1.0, -1.0};
  std::array<double, 3> remainder{};
  for (double a = b2;; a *= 2.0) {
    if (a > 1e7 / t + 1e7 * alpha) {
      throw IntegrationError("oracle tail did not converge", 0.0);
    }
    const double n =
        std::max(8.0, a / (2.0 * quarter_period)) * res.density;
    const std::array<double, 3> inc =
        oracle.panel_sum(a, 2.0 * a, static_cast<std::size_t>(std::ceil(n)));
    add(inc);
    const double X = total[0].value();
    const double Y = total[1].value();
    const std::array<double, 3> scale{std::abs(X), std::abs(Y),
                                      2.0 * std::sqrt(std::abs(X * Y))};
    bool settled = 2.0 * a >= w_min;
    std::array<double, 3> ratio{};
    for (std::size_t j = 0; j < 3; ++j) {
      ratio[j] = prev[j] != 0.0 ? inc[j] / prev[j] : 0.0;
      const bool tiny = std::abs(inc[j]) <= res.tail_tol * scale[j];
      const bool steady = ratio[j] > 0.0 && ratio[j] < 0.6 &&
                          std::abs(ratio[j] - prev_ratio[j]) < 0.02;
      if (!tiny && !steady) settled = false;
    }
    if (settled) {
      for (std::size_t j = 0; j < 3; ++j) {
        const double q = std::clamp(ratio[j], 0.0, 0.5);
        remainder[j] = inc[j] * q / (1.0 - q);
      }
      break;
    }
    prev = inc;
    prev_ratio = ratio;
  }

  const double K = 2.0 * dc.kappa * alpha * alpha * params.hbar /
                   std::numbers::pi;
  out.X = K * (total[0].value() + remainder[0]);
  out.Y = K * (total[1].value() + remainder[1]);
  out.Xdot = K * (total[2].value() + remainder[2]);
  out.err_X = K * std::abs(remainder[0]);
  out.err_Y = K * std::abs(remainder[1]);
  out.err_Xdot = K * std::abs(remainder[2]);
  out.fluct_det = 4.0 * out.X * out.Y - out.Xdot * out.Xdot;
  return out;
}

}  // namespace qbm
