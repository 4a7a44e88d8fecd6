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
#include <random>

#include "doctest.h"
#include "ewsearch/basis.hpp"
#include "ewsearch/hermitian.hpp"
#include "ewsearch/states.hpp"
#include "support/random_ops.hpp"

using namespace ewsearch;

TEST_SUITE_BEGIN("basis");

TEST_CASE("two-qubit basis is the normalized Pauli product family") {
  const ObservableBasis basis = build_basis(2, 2);
  REQUIRE(basis.size() == 16);
  for (int ia = 0; ia < 4; ++ia) {
    for (int ib = 0; ib < 4; ++ib) {
      const int i = basis.flat_index(ia, ib);
      CHECK(i == ia * 4 + ib);
      CHECK((basis.element_matrix(i) - kron(pauli(ia), pauli(ib))).norm() < 1e-14);
    }
  }
  CHECK((basis.element_matrix(0) - 0.5 * Matrix::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("Gram matrix is the identity") {
  for (const auto& dims : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    const ObservableBasis basis = build_basis(dims.first, dims.second);
    REQUIRE(basis.size() ==
            dims.first * dims.first * dims.second * dims.second);
    for (int i = 0; i < basis.size(); ++i) {
      for (int j = i; j < basis.size(); ++j) {
        const double g = hs_inner(basis.element(i), basis.element(j));
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("every non-identity element is traceless and Hermitian") {
  const ObservableBasis basis = build_basis(2, 3);
  for (int i = 1; i < basis.size(); ++i) {
    CHECK(std::abs(basis.element(i).trace()) < 1e-12);
    const Matrix& m = basis.element_matrix(i);
    CHECK((m - m.adjoint()).norm() < 1e-14);
  }
}

TEST_CASE("flat indices of the diagonal Pauli products") {
  const ObservableBasis basis = build_basis(2, 2);
  CHECK(basis.flat_index(1, 1) == 5);
  CHECK(basis.flat_index(2, 2) == 10);
  CHECK(basis.flat_index(3, 3) == 15);
  CHECK(basis.factor_labels(5) == std::pair{1, 1});
  CHECK(basis.factor_labels(10) == std::pair{2, 2});
  CHECK_THROWS_AS((void)basis.flat_index(4, 0), std::out_of_range);
  CHECK_THROWS_AS((void)basis.factor_labels(16), std::out_of_range);
}

TEST_CASE("labels use sigma names for qubit factors") {
  const ObservableBasis b22 = build_basis(2, 2);
  CHECK(b22.label(5) == "s1*s1");
  CHECK(b22.label(10) == "s2*s2");
  CHECK(b22.label(0) == "s0*s0");
  const ObservableBasis b23 = build_basis(2, 3);
  CHECK(b23.label(0) == "s0*g0");
  const ObservableBasis b33 = build_basis(3, 3);
  CHECK(b33.label(0) == "g0*g0");
}

TEST_CASE("vectorize maps known operators to known coefficients") {
  const ObservableBasis basis = build_basis(2, 2);

  // Maximally mixed state: no traceless component at all.
  const HermitianOp mixed(2, 2, 0.25 * Matrix::Identity(4, 4));
  CHECK(vectorize(mixed, basis).norm() < 1e-12);

  // A basis element maps to a unit coordinate at its own index.
  const CoeffVector e5 = vectorize(basis.element(5), basis);
  for (int k = 0; k < e5.size(); ++k) {
    const double want = e5.indices[k] == 5 ? 1.0 : 0.0;
    CHECK(std::abs(e5.values(k) - want) < 1e-12);
  }

  // The even-parity Bell state has coordinates (1/2, -1/2, 1/2) at the
  // diagonal Pauli product indices 5, 10, 15 and nothing elsewhere.
  const DensityMatrix psi = bell_state(BellState::PsiPlus);
  const CoeffVector v = vectorize(psi.op(), basis);
  for (int k = 0; k < v.size(); ++k) {
    double want = 0.0;
    if (v.indices[k] == 5) want = 0.5;
    if (v.indices[k] == 10) want = -0.5;
    if (v.indices[k] == 15) want = 0.5;
    CHECK(std::abs(v.values(k) - want) < 1e-12);
  }
}

TEST_CASE("devectorize round trips vectorize") {
  std::mt19937_64 rng(29);
  for (const auto& dims : {std::pair{2, 2}, std::pair{2, 3}}) {
    const ObservableBasis basis = build_basis(dims.first, dims.second);
    for (int trial = 0; trial < 10; ++trial) {
      const HermitianOp a = testing::random_hermitian(dims.first, dims.second, rng);
      const CoeffVector c = vectorize(a, basis);
      const double trace_part = hs_inner(basis.element(0), a);
      const HermitianOp back = devectorize(c, basis, trace_part);
      CHECK((back.entries() - a.entries()).norm() < 1e-12);
    }
  }
}

TEST_CASE("devectorize accepts sparse index subsets") {
  const ObservableBasis basis = build_basis(2, 2);
  RealVector vals(2);
  vals << 1.0, -1.0;
  const CoeffVector c({5, 10}, vals);
  const HermitianOp a = devectorize(c, basis);
  CHECK((a.entries() -
         (basis.element_matrix(5) - basis.element_matrix(10)))
            .norm() < 1e-14);
  CHECK(std::abs(a.trace()) < 1e-14);
}

TEST_CASE("CoeffVector validates its index structure") {
  RealVector vals(2);
  vals << 1.0, 2.0;
  CHECK_THROWS(CoeffVector({5}, vals));            // length mismatch
  CHECK_THROWS(CoeffVector({10, 5}, vals));        // not increasing
  CHECK_THROWS(CoeffVector({5, 5}, vals));         // duplicate
  CHECK_THROWS(CoeffVector({0, 5}, vals));         // identity index
  CHECK_THROWS(CoeffVector({-1, 5}, vals));        // negative
  CHECK_NOTHROW(CoeffVector({5, 10}, vals));

  RealVector v3(2);
  v3 << 1.0, 2.0;
  const CoeffVector a({5, 10}, v3);
  const CoeffVector b({5, 15}, v3);
  CHECK_THROWS(dot(a, b));  // mismatched index sets
  CHECK(dot(a, a) == doctest::Approx(5.0));
}

TEST_CASE("gell_mann_family sizes and normalization") {
  for (int d : {2, 3, 4}) {
    const std::vector<Matrix> fam = gell_mann_family(d);
    REQUIRE(static_cast<int>(fam.size()) == d * d);
    for (int i = 0; i < d * d; ++i) {
      for (int j = i; j < d * d; ++j) {
        const double g = (fam[i].array().conjugate() * fam[j].array()).sum().real();
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
      if (i > 0) CHECK(std::abs(fam[i].trace()) < 1e-12);
    }
  }
}

TEST_SUITE_END();
