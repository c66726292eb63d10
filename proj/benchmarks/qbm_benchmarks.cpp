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


#include <benchmark/benchmark.h>

#include <cmath>

#include "qbm/kernel.hpp"
#include "qbm/positivity.hpp"
#include "qbm/scenario.hpp"
#include "qbm/spectral.hpp"

namespace {

void BM_KernelDerivatives(benchmark::State& state) {
  const qbm::Kernel kernel{qbm::PhysicalParams{}};
  double t = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.derivatives(t));
    t = t < 10.0 ? t * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_KernelDerivatives);

void BM_InnerFourier(benchmark::State& state) {
  const qbm::Kernel kernel{qbm::PhysicalParams{}};
  const qbm::InnerFourierEvaluator eval(kernel, 0.01 * state.range(0));
  double w = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(w));
    w = w < 1e4 ? w * 1.1 : 0.1;
  }
}
BENCHMARK(BM_InnerFourier)->Arg(1)->Arg(1000);

void BM_Coefficients(benchmark::State& state) {
  const qbm::PhysicalParams p;
  const double t = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qbm::coefficients(t, qbm::OccupationModel::Exact, p));
  }
}
BENCHMARK(BM_Coefficients)->DenseRange(-6, 0, 2)->Unit(benchmark::kMillisecond);

void BM_TheoremCheck(benchmark::State& state) {
  const qbm::PhysicalParams p;
  const qbm::MapCoefficients map = qbm::associate_theorem_params(
      qbm::coefficients(4e-7, qbm::OccupationModel::HighT, p));
  const qbm::GaussianState chi = qbm::build_chi(map, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qbm::theorem_check(chi, map, p.m, p.hbar));
  }
}
BENCHMARK(BM_TheoremCheck)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
