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

#include <complex>
#include <Eigen/Dense>

namespace ewsearch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Maximum entrywise asymmetry accepted before an operator is rejected as
/// non-Hermitian. Inputs below the threshold are symmetrized exactly.
inline constexpr double kAsymmetryTol = 1e-8;

/// A Hermitian operator on a bipartite space of dimension dim_a * dim_b.
/// The stored matrix is symmetrized on construction, so entries() == its own
/// adjoint holds exactly afterwards. Inputs whose asymmetry exceeds
/// kAsymmetryTol are rejected with std::invalid_argument.
class HermitianOp {
 public:
  HermitianOp(int dim_a, int dim_b, const Matrix& entries);

  static HermitianOp identity(int dim_a, int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// Total dimension dim_a * dim_b.
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

  double trace() const { return entries_.trace().real(); }

  HermitianOp operator+(const HermitianOp& other) const;
  HermitianOp operator-(const HermitianOp& other) const;
  HermitianOp operator-() const;
  HermitianOp scaled(double factor) const;

 private:
  int dim_a_;
  int dim_b_;
  Matrix entries_;
};

inline HermitianOp operator*(double factor, const HermitianOp& op) {
  return op.scaled(factor);
}

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Hilbert-Schmidt inner product tr(a b). Real for Hermitian arguments.
double hs_inner(const HermitianOp& a, const HermitianOp& b);
double hs_norm(const HermitianOp& a);

/// Transpose of the second tensor factor only.
Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b);

/// Result of a full Hermitian eigendecomposition. Eigenvalues are sorted in
/// ascending order; eigenvectors.col(i) is a unit eigenvector for
/// eigenvalues(i), and the columns are mutually orthonormal.
struct SpectralDecomp {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// Eigendecomposition of a raw Hermitian matrix via cyclic Jacobi rotations.
/// Deterministic for fixed input. Throws std::runtime_error if the sweep
/// limit is reached before the off-diagonal mass is annihilated.
SpectralDecomp hermitian_eig(const Matrix& m);

SpectralDecomp spectral_decomp(const HermitianOp& a);

}  // namespace ewsearch
