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
/// Spectral (frequency-integral) representation of the diffusion
/// coefficients X(t), Xdot(t), Y(t).
///
/// With F(w) = int_0^t e^{iws} A(s) ds, G(w) = int_0^t e^{iws} A'(s) ds and
/// K = 2 kappa alpha^2 hbar / pi,
///
///   X    = K int_0^inf dw  w(n+1/2) / (alpha^2 + w^2) |F|^2
///   Y    = K int_0^inf dw  w(n+1/2) / (alpha^2 + w^2) |G|^2
///   Xdot = K int_0^inf dw  w(n+1/2) / (alpha^2 + w^2) 2 Re(conj(F) G)
///
/// and 4XY - Xdot^2 = 4 K^2 (<H,H><G,G> - <H,G>^2) with H = F - (t/2) G,
/// which is evaluated directly to avoid cancellation at small t.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qbm/kernel.hpp"
#include "qbm/params.hpp"

namespace qbm {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  std::size_t max_panels = 200000;
};

/// Inner Fourier integrals at one frequency.
struct InnerFourier {
  std::complex<double> F;     ///< int_0^t e^{iws} A(s) ds
  std::complex<double> F_dA;  ///< int_0^t e^{iws} A'(s) ds
  std::complex<double> H;     ///< F - (t/2) F_dA, formed without cancellation
};

/// Diffusion coefficients at one time, with quadrature error estimates.
struct CoefficientSet {
  double t = 0.0;
  OccupationModel model = OccupationModel::HighT;
  double X = 0.0;
  double Xdot = 0.0;
  double Y = 0.0;
  double R2 = 1.0;
  double one_minus_R2 = 0.0;
  double fluct_det = 0.0;  ///< 4XY - Xdot^2
  double err_X = 0.0;
  double err_Xdot = 0.0;
  double err_Y = 0.0;
  double err_det = 0.0;
  std::size_t panels = 0;
};

/// J_n(i theta) = int_0^1 u^n e^{i theta u} du for n < J.size().
void fourier_moments(double theta, std::span<std::complex<double>> J);

/// Evaluates F and F_dA at fixed t for many frequencies.
class InnerFourierEvaluator {
 public:
  InnerFourierEvaluator(const Kernel& kernel, double t);
  InnerFourier operator()(double w) const;
  double t() const noexcept { return t_; }

 private:
  const Kernel* kernel_;
  double t_;
  bool series_;
  // Series path: F, F_dA, H = e^{i theta/2} sum_k c_k K_k(theta) with
  // K_k = int_{-1/2}^{1/2} v^k e^{i theta v} dv and theta = w t.
  std::vector<double> f_;
  std::vector<double> g_;
  std::vector<double> h_;
};

InnerFourier inner_fourier(double t, double w, const PhysicalParams& params);

/// Throws DomainError for t < 0, IntegrationError when the tolerance is
/// not reached and ConsistencyError if the result violates X, Y >= 0 or
/// 4XY >= Xdot^2 beyond rounding.
CoefficientSet coefficients(double t, OccupationModel model,
                            const PhysicalParams& params,
                            const QuadratureOptions& options = {});

double coefficient_X(double t, OccupationModel model,
                     const PhysicalParams& params,
                     const QuadratureOptions& options = {});
double coefficient_Y(double t, OccupationModel model,
                     const PhysicalParams& params,
                     const QuadratureOptions& options = {});
double coefficient_Xdot(double t, OccupationModel model,
                        const PhysicalParams& params,
                        const QuadratureOptions& options = {});

}  // namespace qbm
