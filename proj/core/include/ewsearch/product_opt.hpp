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
#pragma once

#include <cstdint>
#include <vector>

#include "ewsearch/basis.hpp"
#include "ewsearch/states.hpp"

namespace ewsearch {

/// Budget for the multistart alternating-eigenvector optimizer.
struct OptConfig {
  int starts = 50;
  int max_iters = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Same budget with the start count multiplied, for re-verification passes.
OptConfig escalated(const OptConfig& cfg, int factor = 10);

/// Outcome of an optimization over pure product states.
///
/// value always bounds the true optimum from the inside (it is attained by
/// argmax), so callers must treat it as a lower bound for maxima and an
/// upper bound for minima. spread is the gap between the best and the
/// second-best distinct local optimum across starts (0 when all starts
/// agree), a cheap diagnostic for rugged landscapes.
struct OptResult {
  double value;
  ProductState argmax;
  int starts_used;
  bool converged;
  double spread;
};

/// One seesaw ascent from a fixed starting product state. Exposed so the
/// per-half-step monotonicity of the objective can be tested directly.
struct SeesawRun {
  double value;
  ProductState state;
  bool converged;
  std::vector<double> objective_trace;
};

SeesawRun seesaw_ascend(const HermitianOp& a, const ProductState& start,
                        int max_iters, double tol, bool record_trace = false);

/// Best local maximum of <alpha beta|A|alpha beta> over cfg.starts random
/// starts. Deterministic for a fixed cfg.seed; ties across starts are
/// resolved by the earliest start index.
OptResult max_over_products(const HermitianOp& a, const OptConfig& cfg = {});

/// Equals -max_over_products(-A); value upper-bounds the true minimum.
OptResult min_over_products(const HermitianOp& a, const OptConfig& cfg = {});

/// Linear optimization over the projection of the separable set onto the
/// coefficient directions in c.indices: maximizes c . v(rho) over product
/// states rho. maximizer is the projected coefficient vector of the optimal
/// product state and max_value = dot(c, maximizer).
struct WeakOptResult {
  CoeffVector maximizer;
  double max_value;
  bool converged;
  ProductState argmax;
};

WeakOptResult weak_opt_oracle(const CoeffVector& c, const ObservableBasis& basis,
                              const OptConfig& cfg = {});

/// Decides whether the range of an orthogonal projector contains a product
/// state, by maximizing the overlap <alpha beta|P|alpha beta>.
struct SubspaceResult {
  bool contains;
  double best_overlap;
  ProductState witness_state;
};

SubspaceResult subspace_contains_product(const HermitianOp& p,
                                         const OptConfig& cfg = {},
                                         double tol = 1e-6);

}  // namespace ewsearch
