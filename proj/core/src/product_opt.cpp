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
#include "ewsearch/product_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ewsearch {

OptConfig escalated(const OptConfig& cfg, int factor) {
  OptConfig out = cfg;
  out.starts = cfg.starts * factor;
  return out;
}

namespace {

// Distinct-local-optimum resolution for the spread diagnostic.
constexpr double kSpreadResolution = 1e-7;

// (I_M (x) <beta|) A (I_M (x) |beta>), an M x M Hermitian matrix.
Matrix contract_second(const Matrix& a, int dim_a, int dim_b, const Vector& beta) {
  Matrix out(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out(i, j) =
          (beta.adjoint() * a.block(i * dim_b, j * dim_b, dim_b, dim_b) * beta)(0);
    }
  }
  return out;
}

// (<alpha| (x) I_N) A (|alpha> (x) I_N), an N x N Hermitian matrix.
Matrix contract_first(const Matrix& a, int dim_a, int dim_b, const Vector& alpha) {
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      out += std::conj(alpha(i)) * alpha(j) * a.block(i * dim_b, j * dim_b, dim_b, dim_b);
    }
  }
  return out;
}

// Top eigenvector, chosen within the (near-)degenerate top eigenspace as the
// normalized projection of the previous iterate; falls back to the last
// eigenvector when the projection vanishes. Keeps the iteration from
// oscillating between equivalent eigenvectors.
Vector top_eigenvector(const Matrix& m, const Vector& previous, double* top_value) {
  const SpectralDecomp d = hermitian_eig(m);
  const int n = static_cast<int>(d.eigenvalues.size());
  const double top = d.eigenvalues(n - 1);
  if (top_value != nullptr) *top_value = top;

  const double scale = std::max(1.0, std::abs(top));
  const double deg_tol = 1e-9 * scale;
  int first = n - 1;
  while (first > 0 && top - d.eigenvalues(first - 1) <= deg_tol) --first;

  if (first == n - 1) {
    return d.eigenvectors.col(n - 1);
  }
  Vector projected = Vector::Zero(m.rows());
  for (int i = first; i < n; ++i) {
    projected += (d.eigenvectors.col(i).adjoint() * previous)(0) * d.eigenvectors.col(i);
  }
  const double norm = projected.norm();
  if (norm < 1e-8) {
    return d.eigenvectors.col(n - 1);
  }
  return projected / norm;
}

// Make the first component of magnitude above threshold real non-negative.
void canonical_phase(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      return;
    }
  }
}

}  // namespace

SeesawRun seesaw_ascend(const HermitianOp& a, const ProductState& start,
                        int max_iters, double tol, bool record_trace) {
  const int dim_a = a.dim_a();
  const int dim_b = a.dim_b();
  const Matrix& m = a.entries();

  Vector alpha = start.alpha;
  Vector beta = start.beta;
  double value = expectation(a, start);

  SeesawRun run{value, start, false, {}};
  if (record_trace) run.objective_trace.push_back(value);

  for (int it = 0; it < max_iters; ++it) {
    double va = 0.0;
    alpha = top_eigenvector(contract_second(m, dim_a, dim_b, beta), alpha, &va);
    if (record_trace) run.objective_trace.push_back(va);

    double vb = 0.0;
    beta = top_eigenvector(contract_first(m, dim_a, dim_b, alpha), beta, &vb);
    if (record_trace) run.objective_trace.push_back(vb);

    const double gain = vb - value;
    value = vb;
    if (gain < tol) {
      run.converged = true;
      break;
    }
  }

  canonical_phase(alpha);
  canonical_phase(beta);
  run.value = value;
  run.state = ProductState(std::move(alpha), std::move(beta));
  return run;
}

OptResult max_over_products(const HermitianOp& a, const OptConfig& cfg) {
  if (cfg.starts < 1) {
    throw std::invalid_argument("max_over_products: need at least one start");
  }
  std::mt19937_64 rng(cfg.seed);

  std::vector<double> locals;
  locals.reserve(cfg.starts);

  SeesawRun best = seesaw_ascend(
      a, random_product_state(a.dim_a(), a.dim_b(), rng), cfg.max_iters, cfg.tol);
  locals.push_back(best.value);

  for (int s = 1; s < cfg.starts; ++s) {
    SeesawRun run = seesaw_ascend(
        a, random_product_state(a.dim_a(), a.dim_b(), rng), cfg.max_iters, cfg.tol);
    locals.push_back(run.value);
    if (run.value > best.value) {
      best = std::move(run);
    }
  }

  std::sort(locals.begin(), locals.end(), std::greater<double>());
  double spread = 0.0;
  for (double v : locals) {
    if (locals.front() - v > kSpreadResolution) {
      spread = locals.front() - v;
      break;
    }
  }

  return OptResult{best.value, best.state, cfg.starts, best.converged, spread};
}

OptResult min_over_products(const HermitianOp& a, const OptConfig& cfg) {
  OptResult r = max_over_products(-a, cfg);
  r.value = -r.value;
  return r;
}

WeakOptResult weak_opt_oracle(const CoeffVector& c, const ObservableBasis& basis,
                              const OptConfig& cfg) {
  const HermitianOp a = devectorize(c, basis, 0.0);
  OptResult r = max_over_products(a, cfg);

  // Project the optimal product state onto the queried coordinate subset.
  const Matrix rho = r.argmax.joint() * r.argmax.joint().adjoint();
  RealVector values(c.size());
  for (int k = 0; k < c.size(); ++k) {
    values(k) = (basis.element_matrix(c.indices[k]).array().conjugate() *
                 rho.array()).sum().real();
  }
  CoeffVector maximizer(c.indices, std::move(values));
  return WeakOptResult{std::move(maximizer), r.value, r.converged, r.argmax};
}

SubspaceResult subspace_contains_product(const HermitianOp& p,
                                         const OptConfig& cfg, double tol) {
  const Matrix& m = p.entries();
  if ((m * m - m).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("subspace_contains_product: input is not a projector");
  }
  OptResult r = max_over_products(p, cfg);
  return SubspaceResult{r.value >= 1.0 - tol, r.value, r.argmax};
}

}  // namespace ewsearch
