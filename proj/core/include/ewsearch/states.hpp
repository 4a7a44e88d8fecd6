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
#include <random>

#include "ewsearch/hermitian.hpp"

namespace ewsearch {

/// A bipartite density matrix. Construction validates unit trace (within
/// 1e-10) and positive semidefiniteness (smallest eigenvalue >= -1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOp op);

  const HermitianOp& op() const { return op_; }
  int dim_a() const { return op_.dim_a(); }
  int dim_b() const { return op_.dim_b(); }

 private:
  HermitianOp op_;
};

/// A pure product state alpha (x) beta. Both factors must be unit vectors;
/// they are renormalized to machine precision on construction.
struct ProductState {
  Vector alpha;
  Vector beta;

  ProductState(Vector a, Vector b);

  /// The joint vector alpha (x) beta.
  Vector joint() const;
};

/// The four maximally entangled two-qubit states. PsiPlus/PsiMinus are the
/// even-parity pair (|00> +- |11>)/sqrt(2); PhiPlus/PhiMinus are the
/// odd-parity pair (|01> +- |10>)/sqrt(2).
enum class BellState { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

Vector bell_vector(BellState which);
DensityMatrix bell_state(BellState which);

/// Single-qubit Pauli operator with unit Hilbert-Schmidt norm. Index 0 is
/// identity/sqrt(2), indices 1..3 are x, y, z each divided by sqrt(2).
Matrix pauli(int i);

double expectation(const HermitianOp& a, const DensityMatrix& rho);
/// <alpha beta| A |alpha beta> without forming the density matrix.
double expectation(const HermitianOp& a, const ProductState& s);

DensityMatrix product_state_density(const ProductState& s);

/// Haar-like random product state: complex Gaussian factor vectors,
/// normalized. Deterministic for a fixed seed.
ProductState random_product_state(int dim_a, int dim_b, std::uint64_t seed);
ProductState random_product_state(int dim_a, int dim_b, std::mt19937_64& rng);

/// Positivity of the partial transpose. For total dimension <= 6 this is an
/// exact separability test (conclusive == true); in larger dimensions a
/// positive partial transpose is only necessary for separability.
struct PptResult {
  bool is_ppt;
  double min_eig;
  bool boundary;
  bool conclusive;
};

PptResult ppt_check(const DensityMatrix& rho, double tol = 1e-10);

/// Two-qubit Werner-type state p * |bell><bell| + (1 - p) * I/4 for
/// p in [0, 1]. Entangled precisely when p > 1/3.
DensityMatrix werner(double p, BellState which = BellState::PsiPlus);

}  // namespace ewsearch
