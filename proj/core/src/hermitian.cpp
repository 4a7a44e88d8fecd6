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
#include "ewsearch/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ewsearch {

HermitianOp::HermitianOp(int dim_a, int dim_b, const Matrix& entries)
    : dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument("HermitianOp: factor dimensions must be >= 2");
  }
  const int d = dim_a * dim_b;
  if (entries.rows() != d || entries.cols() != d) {
    throw std::invalid_argument("HermitianOp: matrix shape does not match dims");
  }
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kAsymmetryTol) {
    throw std::invalid_argument("HermitianOp: input matrix is not Hermitian");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOp HermitianOp::identity(int dim_a, int dim_b) {
  return HermitianOp(dim_a, dim_b, Matrix::Identity(dim_a * dim_b, dim_a * dim_b));
}

HermitianOp HermitianOp::operator+(const HermitianOp& other) const {
  if (dim_a_ != other.dim_a_ || dim_b_ != other.dim_b_) {
    throw std::invalid_argument("HermitianOp: dimension mismatch");
  }
  return HermitianOp(dim_a_, dim_b_, entries_ + other.entries_);
}

HermitianOp HermitianOp::operator-(const HermitianOp& other) const {
  return *this + (-other);
}

HermitianOp HermitianOp::operator-() const {
  return HermitianOp(dim_a_, dim_b_, -entries_);
}

HermitianOp HermitianOp::scaled(double factor) const {
  return HermitianOp(dim_a_, dim_b_, factor * entries_);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hs_inner(const HermitianOp& a, const HermitianOp& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.entries().array() * b.entries().array().conjugate()).sum().real();
}

double hs_norm(const HermitianOp& a) { return std::sqrt(hs_inner(a, a)); }

Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw std::invalid_argument("partial_transpose: shape mismatch");
  }
  Matrix out(m.rows(), m.cols());
  for (int ia = 0; ia < dim_a; ++ia) {
    for (int ja = 0; ja < dim_a; ++ja) {
      out.block(ia * dim_b, ja * dim_b, dim_b, dim_b) =
          m.block(ia * dim_b, ja * dim_b, dim_b, dim_b).transpose();
    }
  }
  return out;
}

namespace {

// One two-sided Jacobi rotation zeroing entry (p, q) of a Hermitian matrix.
// The phase of a_pq is absorbed first so the classic real rotation angle
// formula applies to the remaining real 2x2 block.
void jacobi_rotate(Matrix& a, Matrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Column update: [col_p col_q] <- [col_p col_q] * U with
  // U = [[c, s], [-s conj(phase), c conj(phase)]].
  const Complex cph = std::conj(phase);
  const Vector colp = a.col(p);
  const Vector colq = a.col(q);
  a.col(p) = c * colp - (s * cph) * colq;
  a.col(q) = s * colp + (c * cph) * colq;

  // Row update with U^dagger on the left.
  const Eigen::RowVectorXcd rowp = a.row(p);
  const Eigen::RowVectorXcd rowq = a.row(q);
  a.row(p) = c * rowp - (s * phase) * rowq;
  a.row(q) = s * rowp + (c * phase) * rowq;

  const Vector vp = v.col(p);
  const Vector vq = v.col(q);
  v.col(p) = c * vp - (s * cph) * vq;
  v.col(q) = s * vp + (c * cph) * vq;

  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

double offdiag_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

SpectralDecomp hermitian_eig(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) {
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  }
  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(1.0, a.norm());
  const double tol = 1e-13 * scale;
  const int max_sweeps = 100;

  int sweep = 0;
  while (offdiag_norm(a) > tol) {
    if (++sweep > max_sweeps) {
      throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) > 1e-18 * scale) {
          jacobi_rotate(a, v, p, q);
        }
      }
    }
    a = 0.5 * (a + a.adjoint());
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomp out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]).real();
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  return out;
}

SpectralDecomp spectral_decomp(const HermitianOp& a) {
  return hermitian_eig(a.entries());
}

}  // namespace ewsearch
