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
#include "ewsearch/states.hpp"

#include <cmath>
#include <stdexcept>

namespace ewsearch {

namespace {
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kNormTol = 1e-9;
}  // namespace

DensityMatrix::DensityMatrix(HermitianOp op) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  }
  const SpectralDecomp d = spectral_decomp(op_);
  if (d.eigenvalues(0) < -kPsdTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

ProductState::ProductState(Vector a, Vector b)
    : alpha(std::move(a)), beta(std::move(b)) {
  if (alpha.size() < 2 || beta.size() < 2) {
    throw std::invalid_argument("ProductState: factor dimensions must be >= 2");
  }
  const double na = alpha.norm();
  const double nb = beta.norm();
  if (std::abs(na - 1.0) > kNormTol || std::abs(nb - 1.0) > kNormTol) {
    throw std::invalid_argument("ProductState: factors must be unit vectors");
  }
  alpha /= na;
  beta /= nb;
}

Vector ProductState::joint() const {
  Vector out(alpha.size() * beta.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    out.segment(i * beta.size(), beta.size()) = alpha(i) * beta;
  }
  return out;
}

Vector bell_vector(BellState which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case BellState::PsiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellState::PsiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellState::PhiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellState::PhiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

DensityMatrix bell_state(BellState which) {
  const Vector v = bell_vector(which);
  return DensityMatrix(HermitianOp(2, 2, v * v.adjoint()));
}

Matrix pauli(int i) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(2, 2);
  switch (i) {
    case 0:
      m(0, 0) = s;
      m(1, 1) = s;
      break;
    case 1:
      m(0, 1) = s;
      m(1, 0) = s;
      break;
    case 2:
      m(0, 1) = Complex(0.0, -s);
      m(1, 0) = Complex(0.0, s);
      break;
    case 3:
      m(0, 0) = s;
      m(1, 1) = -s;
      break;
    default:
      throw std::invalid_argument("pauli: index must be in 0..3");
  }
  return m;
}

double expectation(const HermitianOp& a, const DensityMatrix& rho) {
  if (a.dim_a() != rho.dim_a() || a.dim_b() != rho.dim_b()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return hs_inner(a, rho.op());
}

double expectation(const HermitianOp& a, const ProductState& s) {
  if (a.dim_a() != s.alpha.size() || a.dim_b() != s.beta.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Vector v = s.joint();
  return (v.adjoint() * a.entries() * v)(0).real();
}

DensityMatrix product_state_density(const ProductState& s) {
  const Vector v = s.joint();
  return DensityMatrix(HermitianOp(static_cast<int>(s.alpha.size()),
                                   static_cast<int>(s.beta.size()),
                                   v * v.adjoint()));
}

ProductState random_product_state(int dim_a, int dim_b, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](int d) {
    Vector v(d);
    for (int i = 0; i < d; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v(i) = Complex(re, im);
    }
    v /= v.norm();
    return v;
  };
  Vector a = draw(dim_a);
  Vector b = draw(dim_b);
  return ProductState(std::move(a), std::move(b));
}

ProductState random_product_state(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_product_state(dim_a, dim_b, rng);
}

PptResult ppt_check(const DensityMatrix& rho, double tol) {
  const Matrix pt =
      partial_transpose(rho.op().entries(), rho.dim_a(), rho.dim_b());
  const SpectralDecomp d = hermitian_eig(pt);
  PptResult out;
  out.min_eig = d.eigenvalues(0);
  out.is_ppt = out.min_eig >= -tol;
  out.boundary = std::abs(out.min_eig) <= tol;
  out.conclusive = rho.dim_a() * rho.dim_b() <= 6;
  return out;
}

DensityMatrix werner(double p, BellState which) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("werner: parameter must be in [0, 1]");
  }
  const Vector v = bell_vector(which);
  const Matrix m =
      p * (v * v.adjoint()).eval() + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
  return DensityMatrix(HermitianOp(2, 2, m));
}

}  // namespace ewsearch
