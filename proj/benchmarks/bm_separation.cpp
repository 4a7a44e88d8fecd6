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

#include <vector>

#include "ewsearch/basis.hpp"
#include "ewsearch/separation.hpp"
#include "ewsearch/states.hpp"

using namespace ewsearch;

namespace {

TargetPoint werner_point(double p, std::vector<int> indices) {
  const ObservableBasis basis = build_basis(2, 2);
  const DensityMatrix rho = werner(p);
  RealVector vals(static_cast<int>(indices.size()));
  for (size_t k = 0; k < indices.size(); ++k) {
    vals(static_cast<int>(k)) = expectation(basis.element(indices[k]), rho);
  }
  TargetPoint out;
  out.coords = CoeffVector(std::move(indices), std::move(vals));
  return out;
}

std::vector<int> full_indices() {
  std::vector<int> idx;
  for (int i = 1; i < 16; ++i) idx.push_back(i);
  return idx;
}

}  // namespace

// Fast path: the target sits inside the separable ball, no engine iteration.
static void BM_WsepBallExit(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.2, full_indices());
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsep(p, basis));
  }
}
BENCHMARK(BM_WsepBallExit);

// Witness outcome over the full 15-dimensional coefficient space.
static void BM_WsepWitnessFull(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.6, full_indices());
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsep(p, basis));
  }
}
BENCHMARK(BM_WsepWitnessFull)->Unit(benchmark::kMillisecond);

// Member outcome requiring the engine to exhaust the polytope volume.
static void BM_WsepMemberTwo(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.45, {5, 10});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsep(p, basis));
  }
}
BENCHMARK(BM_WsepMemberTwo)->Unit(benchmark::kMillisecond);

static void BM_WsepWitnessAccp(benchmark::State& state) {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.6, full_indices());
  SolverConfig cfg;
  cfg.engine = SolverEngine::Accp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsep(p, basis, cfg));
  }
}
BENCHMARK(BM_WsepWitnessAccp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
