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
#include "ewsearch/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ewsearch {

CoeffVector::CoeffVector(std::vector<int> idx, RealVector vals)
    : indices(std::move(idx)), values(std::move(vals)) {
  if (static_cast<int>(indices.size()) != values.size()) {
    throw std::invalid_argument("CoeffVector: index/value length mismatch");
  }
  for (size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1) {
      throw std::invalid_argument("CoeffVector: indices must be >= 1");
    }
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw std::invalid_argument("CoeffVector: indices must be strictly increasing");
    }
  }
}

double dot(const CoeffVector& a, const CoeffVector& b) {
  if (a.indices != b.indices) {
    throw std::invalid_argument("dot: coefficient vectors use different index sets");
  }
  return a.values.dot(b.values);
}

std::vector<Matrix> gell_mann_family(int d) {
  if (d < 2) {
    throw std::invalid_argument("gell_mann_family: dimension must be >= 2");
  }
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(d) * d);

  out.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      out.push_back(sym);

      Matrix antisym = Matrix::Zero(d, d);
      antisym(j, k) = Complex(0.0, -inv_sqrt2);
      antisym(k, j) = Complex(0.0, inv_sqrt2);
      out.push_back(antisym);
    }
  }

  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    out.push_back(diag);
  }
  return out;
}

ObservableBasis::ObservableBasis(int dim_a, int dim_b)
    : dim_a_(dim_a), dim_b_(dim_b) {
  factor_a_ = gell_mann_family(dim_a);
  factor_b_ = gell_mann_family(dim_b);
  elements_.reserve(factor_a_.size() * factor_b_.size());
  for (const Matrix& ga : factor_a_) {
    for (const Matrix& gb : factor_b_) {
      elements_.push_back(kron(ga, gb));
    }
  }
}

HermitianOp ObservableBasis::element(int i) const {
  return HermitianOp(dim_a_, dim_b_, elements_.at(i));
}

int ObservableBasis::flat_index(int ia, int ib) const {
  const int na = dim_a_ * dim_a_;
  const int nb = dim_b_ * dim_b_;
  if (ia < 0 || ia >= na || ib < 0 || ib >= nb) {
    throw std::out_of_range("ObservableBasis: factor label out of range");
  }
  return ia * nb + ib;
}

std::pair<int, int> ObservableBasis::factor_labels(int i) const {
  if (i < 0 || i >= size()) {
    throw std::out_of_range("ObservableBasis: flat index out of range");
  }
  const int nb = dim_b_ * dim_b_;
  return {i / nb, i % nb};
}

std::string ObservableBasis::label(int i) const {
  const auto [ia, ib] = factor_labels(i);
  // Qubit factors get the familiar sigma labels; larger factors are
  // labeled as generalized Gell-Mann generators.
  const std::string pa = dim_a_ == 2 ? "s" : "g";
  const std::string pb = dim_b_ == 2 ? "s" : "g";
  return pa + std::to_string(ia) + "*" + pb + std::to_string(ib);
}

ObservableBasis build_basis(int dim_a, int dim_b) {
  return ObservableBasis(dim_a, dim_b);
}

CoeffVector vectorize(const HermitianOp& a, const ObservableBasis& basis) {
  if (a.dim_a() != basis.dim_a() || a.dim_b() != basis.dim_b()) {
    throw std::invalid_argument("vectorize: operator does not match basis dims");
  }
  const int n = basis.size() - 1;
  std::vector<int> indices(n);
  RealVector values(n);
  for (int i = 1; i <= n; ++i) {
    indices[i - 1] = i;
    // tr(X_i A) with X_i Hermitian.
    values(i - 1) =
        (basis.element_matrix(i).array().conjugate() * a.entries().array()).sum().real();
  }
  return CoeffVector(std::move(indices), std::move(values));
}

HermitianOp devectorize(const CoeffVector& c, const ObservableBasis& basis,
                        double trace_part) {
  Matrix m = trace_part * basis.element_matrix(0);
  for (int k = 0; k < c.size(); ++k) {
    if (c.indices[k] >= basis.size()) {
      throw std::out_of_range("devectorize: index exceeds basis size");
    }
    m += c.values(k) * basis.element_matrix(c.indices[k]);
  }
  return HermitianOp(basis.dim_a(), basis.dim_b(), m);
}

}  // namespace ewsearch
