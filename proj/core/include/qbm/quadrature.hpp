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
/// Globally adaptive Gauss-Kronrod (G10/K21) quadrature of vector-valued
/// integrands.
///
/// All components share the same nodes and the same positive weights, so
/// any inequality that holds pointwise for a positive measure (for example
/// Cauchy-Schwarz between components) also holds for the discrete sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm::quad {

/// 21-point Kronrod rule on [-1, 1] with its embedded 10-point Gauss rule.
struct GaussKronrod21 {
  std::array<double, 21> nodes;
  std::array<double, 21> kronrod_weights;
  std::array<double, 21> gauss_weights;  ///< Zero at Kronrod-only nodes.
};

const GaussKronrod21& gauss_kronrod21();

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_panels = 200000;
};

template <std::size_t K>
struct Result {
  std::array<double, K> value{};
  std::array<double, K> error{};
  std::size_t panels = 0;
};

namespace detail {

template <std::size_t K>
struct Panel {
  double a;
  double b;
  std::array<double, K> value;
  std::array<double, K> error;
  double priority;
};

template <std::size_t K, class F>
Panel<K> evaluate_panel(F& f, double a, double b) {
  const GaussKronrod21& rule = gauss_kronrod21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, K> kr{};
  std::array<double, K> ga{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const std::array<double, K> y = f(c + h * rule.nodes[i]);
    for (std::size_t k = 0; k < K; ++k) {
      kr[k] += rule.kronrod_weights[i] * y[k];
      ga[k] += rule.gauss_weights[i] * y[k];
    }
  }
  Panel<K> p{a, b, {}, {}, 0.0};
  for (std::size_t k = 0; k < K; ++k) {
    p.value[k] = h * kr[k];
    p.error[k] = std::abs(h * (kr[k] - ga[k]));
  }
  return p;
}

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()].
///
/// `f(x)` returns std::array<double, K>. `scale(I)` maps the current
/// estimate to per-component positive scales; integration stops once
/// error[k] <= rel_tol * scale[k] + abs_tol for every k. Panels are split
/// in halves, worst first. Throws IntegrationError if max_panels is
/// exhausted first.
template <std::size_t K, class F, class Scale>
Result<K> integrate(F&& f, std::span<const double> breakpoints, Scale&& scale,
                    const Options& options = {}) {
  using Panel = detail::Panel<K>;
  if (breakpoints.size() < 2) {
    throw DomainError("integration needs at least two breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }

  std::vector<Panel> done;
  std::vector<Panel> heap;
  std::array<double, K> total{};
  std::array<double, K> total_err{};

  auto priority_of = [&](const Panel& p, const std::array<double, K>& s) {
    double worst = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double denom = s[k] > 0.0 ? s[k] : 1.0;
      worst = std::max(worst, p.error[k] / denom);
    }
    return worst;
  };
  auto cmp = [](const Panel& x, const Panel& y) {
    if (x.priority != y.priority) return x.priority < y.priority;
    return x.a > y.a;
  };

  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    heap.push_back(detail::evaluate_panel<K>(f, breakpoints[i - 1],
                                             breakpoints[i]));
  }

  auto recompute_totals = [&] {
    std::array<detail::CompensatedSum, K> v{};
    std::array<double, K> e{};
    for (const auto* group : {&heap, &done}) {
      for (const Panel& p : *group) {
        for (std::size_t k = 0; k < K; ++k) {
          v[k].add(p.value[k]);
          e[k] += p.error[k];
        }
      }
    }
    for (std::size_t k = 0; k < K; ++k) total[k] = v[k].value();
    total_err = e;
  };
  auto rebuild = [&] {
    recompute_totals();
    const std::array<double, K> s = scale(total);
    for (Panel& p : heap) p.priority = priority_of(p, s);
    std::make_heap(heap.begin(), heap.end(), cmp);
  };
  auto converged = [&] {
    const std::array<double, K> s = scale(total);
    for (std::size_t k = 0; k < K; ++k) {
      if (!(total_err[k] <= options.rel_tol * s[k] + options.abs_tol)) {
        return false;
      }
    }
    return true;
  };
  auto describe = [](const char* what, double err) {
    std::ostringstream os;
    os << what << "; achieved relative error " << err;
    return os.str();
  };
  auto achieved = [&] {
    const std::array<double, K> s = scale(total);
    double worst = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      worst = std::max(worst, total_err[k] / (s[k] > 0.0 ? s[k] : 1.0));
    }
    return worst;
  };

  rebuild();
  std::size_t splits_since_rebuild = 0;
  std::size_t rebuild_every = 64;
  while (!converged()) {
    if (heap.empty()) {
      throw IntegrationError(
          describe("quadrature cannot refine further", achieved()),
          achieved());
    }
    if (heap.size() + done.size() >= options.max_panels) {
      throw IntegrationError(
          describe("quadrature panel limit reached", achieved()), achieved());
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <=
            64.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(worst.a), std::abs(worst.b))) {
      done.push_back(worst);
      continue;
    }
    Panel left = detail::evaluate_panel<K>(f, worst.a, mid);
    Panel right = detail::evaluate_panel<K>(f, mid, worst.b);
    for (std::size_t k = 0; k < K; ++k) {
      total[k] += left.value[k] + right.value[k] - worst.value[k];
      total_err[k] += left.error[k] + right.error[k] - worst.error[k];
    }
    const std::array<double, K> s = scale(total);
    for (Panel* p : {&left, &right}) {
      p->priority = priority_of(*p, s);
      heap.push_back(*p);
      std::push_heap(heap.begin(), heap.end(), cmp);
    }
    if (++splits_since_rebuild >= rebuild_every) {
      rebuild();
      splits_since_rebuild = 0;
      rebuild_every *= 2;
    }
  }

  // Final sum in increasing abscissa order for reproducibility.
  std::vector<const Panel*> all;
  all.reserve(heap.size() + done.size());
  for (const Panel& p : heap) all.push_back(&p);
  for (const Panel& p : done) all.push_back(&p);
  std::sort(all.begin(), all.end(),
            [](const Panel* x, const Panel* y) { return x->a < y->a; });
  std::array<detail::CompensatedSum, K> v{};
  Result<K> result;
  for (const Panel* p : all) {
    for (std::size_t k = 0; k < K; ++k) {
      v[k].add(p->value[k]);
      result.error[k] += p->error[k];
    }
  }
  for (std::size_t k = 0; k < K; ++k) result.value[k] = v[k].value();
  result.panels = all.size();
  return result;
}

}  // namespace qbm::quad
