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

#include <string>
#include <utility>
#include <vector>

#include "ewsearch/hermitian.hpp"

namespace ewsearch {

/// Coefficients of a traceless Hermitian operator over a subset of the
/// non-identity basis elements. indices[k] is the flat basis index that
/// values(k) multiplies; indices are strictly increasing and never 0 (the
/// identity direction is tracked separately by callers that need it).
struct CoeffVector {
  std::vector<int> indices;
  RealVector values;

  CoeffVector() = default;
  CoeffVector(std::vector<int> idx, RealVector vals);

  int size() const { return static_cast<int>(indices.size()); }
  double norm() const { return values.norm(); }
};

/// Euclidean inner product of two coefficient vectors over the same index
/// set. Throws if the index sets differ.
double dot(const CoeffVector& a, const CoeffVector& b);

/// Orthonormal Hermitian product basis for operators on C^M (x) C^N.
///
/// Each factor uses the generalized Gell-Mann family, normalized to unit
/// Hilbert-Schmidt norm and ordered as: identity/sqrt(d), then for every
/// index pair (j, k) with j < k in lexicographic order the symmetric and
/// antisymmetric off-diagonal generators, then the diagonal generators in
/// increasing rank. For d = 2 this is exactly (identity, x, y, z)/sqrt(2).
///
/// The bipartite element with flat index i = ia * N^2 + ib is
/// factor_a[ia] (x) factor_b[ib]; element 0 is identity/sqrt(M*N) and every
/// other element is traceless.
class ObservableBasis {
 public:
  ObservableBasis(int dim_a, int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// Number of bipartite elements, M^2 * N^2.
  int size() const { return static_cast<int>(elements_.size()); }

  const Matrix& element_matrix(int i) const { return elements_.at(i); }
  HermitianOp element(int i) const;

  int flat_index(int ia, int ib) const;
  std::pair<int, int> factor_labels(int i) const;
  /// Human-readable label such as "g1*g1" for the flat index.
  std::string label(int i) const;

  const std::vector<Matrix>& factor_a() const { return factor_a_; }
  const std::vector<Matrix>& factor_b() const { return factor_b_; }

 private:
  int dim_a_;
  int dim_b_;
  std::vector<Matrix> factor_a_;
  std::vector<Matrix> factor_b_;
  std::vector<Matrix> elements_;
};

/// Single-factor generalized Gell-Mann family for dimension d, unit
/// Hilbert-Schmidt norm, identity first. Size d^2.
std::vector<Matrix> gell_mann_family(int d);

ObservableBasis build_basis(int dim_a, int dim_b);

/// Full coefficient vector of a over the non-identity elements 1..size-1.
CoeffVector vectorize(const HermitianOp& a, const ObservableBasis& basis);

/// Reconstruct trace_part * X_0 + sum_k values(k) * X_{indices[k]}. Accepts
/// coefficient vectors over any index subset.
HermitianOp devectorize(const CoeffVector& c, const ObservableBasis& basis,
                        double trace_part = 0.0);

}  // namespace ewsearch
