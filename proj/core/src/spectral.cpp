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

#include "qbm/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qbm/errors.hpp"
#include "qbm/quadrature.hpp"

namespace qbm {

void fourier_moments(double theta, std::span<std::complex<double>> J) {
  using C = std::complex<double>;
  if (J.empty()) return;
  const std::size_t N = J.size() - 1;
  if (theta == 0.0) {
    for (std::size_t n = 0; n <= N; ++n) J[n] = 1.0 / static_cast<double>(n + 1);
    return;
  }
  const C x(0.0, theta);
  const C e = std::polar(1.0, theta);
  const double half_sin = std::sin(0.5 * theta);
  J[0] = C(std::sin(theta) / theta, 2.0 * half_sin * half_sin / theta);

  // Upward recursion is stable while n <= |theta|.
  const double at = std::abs(theta);
  const std::size_t up =
      at >= static_cast<double>(N) ? N : static_cast<std::size_t>(at);
  for (std::size_t n = 1; n <= up; ++n) {
    J[n] = (e - static_cast<double>(n) * J[n - 1]) / x;
  }
  if (up == N) return;

  // Downward from a start index where the tail estimate is negligible.
  const std::size_t L = N + 40 + 2 * static_cast<std::size_t>(std::ceil(at));
  C j = e / (static_cast<double>(L + 1) + x);
  for (std::size_t n = L; n > up + 1; --n) {
    j = (e - x * j) / static_cast<double>(n);
    if (n - 1 <= N) J[n - 1] = j;
  }
}

InnerFourierEvaluator::InnerFourierEvaluator(const Kernel& kernel, double t)
    : kernel_(&kernel), t_(t), series_(kernel.uses_series(t)) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
  if (!series_) return;
  const auto M = kernel.moments();
  std::vector<double> mu(M.size());
  double p = 1.0;
  for (std::size_t n = 0; n < M.size(); ++n) {
    mu[n] = M[n] * p;
    p *= t / static_cast<double>(n + 1);
  }
  // Drop the tail whose contribution is below 1e-20 of the leading term.
  double lead = 0.0;
  for (std::size_t n = 0; n < mu.size(); ++n) {
    lead = std::max(lead, std::abs(mu[n]) * static_cast<double>(n + 1));
  }
  std::size_t keep = mu.size();
  while (keep > 4 &&
         std::abs(mu[keep - 1]) * static_cast<double>(keep) < 1e-20 * lead) {
    --keep;
  }

  // With s = t (v + 1/2):
  //   A(s)            = sum_n mu_n (v + 1/2)^n
  //   t A'(s)         = sum_n n mu_n (v + 1/2)^(n-1)
  //   A - (t/2) A'    = sum_n mu_n sum_k C(n,k) (1 - (n-k)) 2^-(n-k) v^k
  // The v^(n-1) coefficient of the last line vanishes identically, which is
  // the cancellation H would otherwise suffer; it is dropped exactly here.
  std::vector<std::vector<double>> binom(keep, std::vector<double>(keep, 0.0));
  for (std::size_t n = 0; n < keep; ++n) {
    binom[n][0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
      binom[n][k] = binom[n - 1][k - 1] + (k < n ? binom[n - 1][k] : 0.0);
    }
  }
  f_.assign(keep, 0.0);
  g_.assign(keep, 0.0);
  h_.assign(keep, 0.0);
  for (std::size_t k = 0; k < keep; ++k) {
    double f = 0.0, g = 0.0, h = 0.0;
    for (std::size_t n = keep; n-- > k;) {
      const double half_pow = std::ldexp(1.0, -static_cast<int>(n - k));
      const double term = mu[n] * binom[n][k] * half_pow;
      f += term;
      h += term * (1.0 - static_cast<double>(n - k));
      if (n > k) {
        g += static_cast<double>(n) * mu[n] * binom[n - 1][k] * 2.0 *
             half_pow;
      }
    }
    f_[k] = t * f;
    g_[k] = g;
    h_[k] = t * h;
  }
}

namespace {

std::complex<double> phi1(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) return 1.0;
  return expm1(z) / z;
}

}  // namespace

InnerFourier InnerFourierEvaluator::operator()(double w) const {
  using C = std::complex<double>;
  if (t_ == 0.0) return {C(), C(), C()};
  if (series_) {
    // int_{-1/2}^{1/2} v^k e^{i theta v} dv = 2^-(k+1) L_k(theta/2) with
    // L_k(z) = J_k(z) + (-1)^k conj(J_k(z)).
    const double theta = w * t_;
    const std::size_t n = f_.size();
    std::array<C, Kernel::kMoments> J;
    fourier_moments(0.5 * theta, std::span<C>(J.data(), n));
    C F, G, H;
    for (std::size_t k = 0; k < n; ++k) {
      const double scale = std::ldexp(1.0, -static_cast<int>(k));
      const C K = (k % 2 == 0) ? C(scale * J[k].real(), 0.0)
                               : C(0.0, scale * J[k].imag());
      F += f_[k] * K;
      G += g_[k] * K;
      H += h_[k] * K;
    }
    const C phase = std::polar(1.0, 0.5 * theta);
    return {phase * F, phase * G, phase * H};
  }
  C F, G;
  for (const KernelMode& mode : kernel_->modes()) {
    const C z = mode.rate + C(0.0, w);
    const C q = t_ * phi1(z * t_);
    F += mode.weight * q;
    G += mode.weight * mode.rate * q;
  }
  return {F, G, F - 0.5 * t_ * G};
}

InnerFourier inner_fourier(double t, double w, const PhysicalParams& params) {
  const Kernel kernel(params);
  return InnerFourierEvaluator(kernel, t)(w);
}

namespace {

// Breakpoints one period apart up to w t = kPeriodicReach; the linear
// range extends to w t = kLinearReach before the tail map takes over.
constexpr double kPeriodicReach = 64.0;
constexpr double kLinearReach = 1e4;

// Integration variable s in [0, 2W]: w = s on [0, W] and
// w = W^2 / (2W - s) beyond, so the tail is integrated, not bounded.
std::vector<double> breakpoints(double t, double W, const PhysicalParams& p) {
  std::vector<double> b{0.0};
  auto add = [&](double x) {
    if (x > 0.0 && x < W) b.push_back(x);
  };
  add(p.omega);
  for (int j = 1; j <= 4; ++j) {
    add(p.omega - j * p.gamma);
    add(p.omega + j * p.gamma);
  }
  for (double x = 0.25 * p.alpha; x < W; x *= 4.0) add(x);
  // Period-spaced breakpoints where the phase e^{iwt} first matters, then
  // geometric ones; adaptivity resolves the rest.
  const double step = 2.0 * std::numbers::pi / t;
  const double start = 1.0 / t;
  const double stop = std::min(W, kPeriodicReach / t);
  for (double x = start; x < stop; x += step) add(x);
  for (double x = stop; x < W; x *= 1.25) add(x);
  b.push_back(W);
  for (int k = 1; k <= 6; ++k) b.push_back(W * (2.0 - std::ldexp(1.0, -k)));
  b.push_back(2.0 * W);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(),
                      [](double x, double y) {
                        return std::abs(x - y) <= 1e-12 * std::max(1.0, y);
                      }),
          b.end());
  return b;
}

}  // namespace

CoefficientSet coefficients(double t, OccupationModel model,
                            const PhysicalParams& params,
                            const QuadratureOptions& options) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("time must be finite and non-negative");
  }
  if (!(options.rel_tol > 0.0)) throw DomainError("tolerance must be positive");
  const DerivedConstants dc = derived_constants(params);
  const Kernel kernel(params);
  const Dissipation diss = kernel.dissipation(t);

  CoefficientSet out;
  out.t = t;
  out.model = model;
  out.R2 = diss.R2;
  out.one_minus_R2 = diss.one_minus_R2;
  if (t == 0.0) return out;

  const InnerFourierEvaluator inner(kernel, t);
  const double alpha2 = params.alpha * params.alpha;
  const double W =
      std::max(200.0 * std::max(params.alpha, params.omega), kLinearReach / t);

  auto integrand = [&](double s) -> std::array<double, 5> {
    double w = s;
    double jac = 1.0;
    if (s > W) {
      const double u = 2.0 * W - s;
      if (!(u > 0.0)) return {};
      w = W * (W / u);
      jac = (W / u) * (W / u);
    }
    const double weight =
        occupation_weight(w, model, params) / (alpha2 + w * w) * jac;
    const InnerFourier f = inner(w);
    const std::complex<double>& H = f.H;
    return {weight * std::norm(f.F), weight * std::norm(f.F_dA),
            2.0 * weight * (std::conj(f.F) * f.F_dA).real(),
            weight * std::norm(H), weight * (std::conj(H) * f.F_dA).real()};
  };
  auto scale = [](const std::array<double, 5>& I) -> std::array<double, 5> {
    return {std::abs(I[0]), std::abs(I[1]),
            2.0 * std::sqrt(std::abs(I[0] * I[1])), std::abs(I[3]),
            std::sqrt(std::abs(I[3] * I[1]))};
  };

  const std::vector<double> b = breakpoints(t, W, params);
  quad::Options qopt;
  qopt.rel_tol = options.rel_tol;
  qopt.max_panels = options.max_panels;
  const quad::Result<5> r =
      quad::integrate<5>(integrand, std::span<const double>(b), scale, qopt);

  const double K =
      2.0 * dc.kappa * alpha2 * params.hbar / std::numbers::pi;
  out.X = K * r.value[0];
  out.Y = K * r.value[1];
  out.Xdot = K * r.value[2];
  out.err_X = K * r.error[0];
  out.err_Y = K * r.error[1];
  out.err_Xdot = K * r.error[2];
  // H and G are nearly parallel at small t, so HH GG - HG^2 cancels to
  // far below double resolution. The Gram determinant is unchanged by
  // G -> G - mu H; with mu = HG / HH from the first pass, a second pass
  // integrates the nearly orthogonal remainder directly.
  const double mu = r.value[3] > 0.0 ? r.value[4] / r.value[3] : 0.0;
  auto residual = [&](double s) -> std::array<double, 3> {
    double w = s;
    double jac = 1.0;
    if (s > W) {
      const double u = 2.0 * W - s;
      if (!(u > 0.0)) return {};
      w = W * (W / u);
      jac = (W / u) * (W / u);
    }
    const double weight =
        occupation_weight(w, model, params) / (alpha2 + w * w) * jac;
    const InnerFourier f = inner(w);
    const std::complex<double> G = f.F_dA - mu * f.H;
    return {weight * std::norm(f.H), weight * std::norm(G),
            weight * (std::conj(f.H) * G).real()};
  };
  auto residual_scale =
      [](const std::array<double, 3>& I) -> std::array<double, 3> {
    return {std::abs(I[0]), std::abs(I[1]), std::sqrt(std::abs(I[0] * I[1]))};
  };
  const quad::Result<3> q = quad::integrate<3>(
      residual, std::span<const double>(b), residual_scale, qopt);
  const double HH = q.value[0];
  const double GG = q.value[1];
  const double HG = q.value[2];
  // Pointwise rounding of G - mu H is about eps |G|, relative to the
  // small remainder.
  const double rounding = 16.0 * std::numeric_limits<double>::epsilon() *
                          std::sqrt(std::abs(GG * r.value[1]));
  out.fluct_det = 4.0 * K * K * (HH * GG - HG * HG);
  out.err_det = 4.0 * K * K *
                (q.error[0] * GG + HH * (q.error[1] + rounding) +
                 2.0 * std::abs(HG) * q.error[2]);
  out.panels = r.panels + q.panels;

  if (out.X < 0.0 || out.Y < 0.0) {
    throw ConsistencyError("negative diffusion coefficient");
  }
  const double cs_scale = 4.0 * out.X * out.Y + out.Xdot * out.Xdot;
  if (out.fluct_det < -1e-10 * cs_scale) {
    throw ConsistencyError("coefficients violate 4XY >= Xdot^2");
  }
  return out;
}

double coefficient_X(double t, OccupationModel model,
                     const PhysicalParams& params,
                     const QuadratureOptions& options) {
  return coefficients(t, model, params, options).X;
}

double coefficient_Y(double t, OccupationModel model,
                     const PhysicalParams& params,
                     const QuadratureOptions& options) {
  return coefficients(t, model, params, options).Y;
}

double coefficient_Xdot(double t, OccupationModel model,
                        const PhysicalParams& params,
                        const QuadratureOptions& options) {
  return coefficients(t, model, params, options).Xdot;
}

}  // namespace qbm
