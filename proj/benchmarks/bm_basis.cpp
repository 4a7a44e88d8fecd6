// Copyright 2026 The ewsearch developers.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include "ewsearch/basis.hpp"
#include "ewsearch/states.hpp"

using namespace ewsearch;

static void BM_BuildBasis(benchmark::State& state) {
  const int da = static_cast<int>(state.range(0));
  const int db = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_basis(da, db));
  }
}
BENCHMARK(BM_BuildBasis)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Args({4, 4});

static void BM_Vectorize(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const DensityMatrix rho = werner(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vectorize(rho.op(), basis));
  }
}
BENCHMARK(BM_Vectorize);

static void BM_Devectorize(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const DensityMatrix rho = werner(0.5);
  const CoeffVector coeffs = vectorize(rho.op(), basis);
  for (auto _ : state) {
    benchmark::DoNotOptimize(devectorize(coeffs, basis, 0.5));
  }
}
BENCHMARK(BM_Devectorize);

BENCHMARK_MAIN();
