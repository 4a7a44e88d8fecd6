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
#include "ewsearch/product_opt.hpp"

using namespace ewsearch;

namespace {

HermitianOp parity_difference_op() {
  const ObservableBasis basis = build_basis(2, 2);
  return basis.element(5) - basis.element(10);
}

}  // namespace

// The alternating maximization with a varying multistart budget. The default
// configuration uses 50 starts; the single-start row shows the per-start cost.
static void BM_MaxOverProducts(benchmark::State& state) {
  const HermitianOp a = parity_difference_op();
  OptConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_over_products(a, cfg));
  }
}
BENCHMARK(BM_MaxOverProducts)->Arg(1)->Arg(8)->Arg(50);

static void BM_MaxOverProductsQutrit(benchmark::State& state) {
  const ObservableBasis basis = build_basis(3, 3);
  // A fixed dense direction in the 3x3 coefficient space.
  HermitianOp a = basis.element(basis.flat_index(1, 1));
  a = a - basis.element(basis.flat_index(2, 2));
  a = a + basis.element(basis.flat_index(3, 3));
  OptConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_over_products(a, cfg));
  }
}
BENCHMARK(BM_MaxOverProductsQutrit)->Arg(1)->Arg(8);

// Oracle-shaped call: optimize a sparse direction given by coefficients.
static void BM_WeakOracle(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  RealVector vals(2);
  vals << 1.0, -1.0;
  const CoeffVector dir({5, 10}, vals);
  OptConfig cfg;
  cfg.starts = 16;
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_opt_oracle(dir, basis, cfg));
  }
}
BENCHMARK(BM_WeakOracle);

BENCHMARK_MAIN();
