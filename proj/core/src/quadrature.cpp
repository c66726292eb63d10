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

#include "qbm/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qbm::quad {

namespace {

GaussKronrod21 make_rule() {
  // Boost stores the non-negative half, Kronrod nodes at even indices and
  // Gauss nodes at odd ones.
  const auto& x = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
  const auto& wk = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
  GaussKronrod21 rule{};
  std::size_t idx = 0;
  for (std::size_t i = x.size(); i-- > 1;) {
    rule.nodes[idx] = -x[i];
    rule.kronrod_weights[idx] = wk[i];
    rule.gauss_weights[idx] = (i % 2 == 1) ? wg[i / 2] : 0.0;
    ++idx;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes[idx] = x[i];
    rule.kronrod_weights[idx] = wk[i];
    rule.gauss_weights[idx] = (i % 2 == 1) ? wg[i / 2] : 0.0;
    ++idx;
  }
  return rule;
}

}  // namespace

const GaussKronrod21& gauss_kronrod21() {
  static const GaussKronrod21 rule = make_rule();
  return rule;
}

}  // namespace qbm::quad
