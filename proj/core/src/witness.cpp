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
#include "ewsearch/witness.hpp"

#include <cmath>
#include <stdexcept>

namespace ewsearch {

const char* handedness_name(Handedness h) {
  switch (h) {
    case Handedness::Left:
      return "left";
    case Handedness::Right:
      return "right";
    case Handedness::Ambidextrous:
      return "ambidextrous";
    default:
      return "none";
  }
}

namespace {

constexpr double kAgreementTol = 1e-8;
constexpr double kOrthoTol = 1e-9;

struct Thresholds {
  double a_star;
  double b_star;
  bool verified;
  OptConfig budget;
};

// Base-budget estimate followed by an escalated re-run. The escalated
// values are the ones reported; verified requires the two passes to agree
// and all runs to converge.
Thresholds compute_thresholds(const HermitianOp& a, const OptConfig& cfg) {
  const OptResult lo = min_over_products(a, cfg);
  const OptResult hi = max_over_products(a, cfg);
  const OptConfig big = escalated(cfg);
  const OptResult lo2 = min_over_products(a, big);
  const OptResult hi2 = max_over_products(a, big);

  Thresholds t;
  t.a_star = lo2.value;
  t.b_star = hi2.value;
  t.verified = lo.converged && hi.converged && lo2.converged && hi2.converged &&
               std::abs(lo.value - lo2.value) <= kAgreementTol &&
               std::abs(hi.value - hi2.value) <= kAgreementTol;
  t.budget = big;
  return t;
}

Witness assemble(const HermitianOp& a, const Thresholds& t, double lambda_min,
                 double lambda_max) {
  const bool left = lambda_min < t.a_star - kHandednessTol;
  const bool right = lambda_max > t.b_star + kHandednessTol;
  const bool left_boundary = !left && std::abs(t.a_star - lambda_min) <= kHandednessTol;
  const bool right_boundary = !right && std::abs(lambda_max - t.b_star) <= kHandednessTol;

  Handedness h = Handedness::None;
  if (left && right) {
    h = Handedness::Ambidextrous;
  } else if (left) {
    h = Handedness::Left;
  } else if (right) {
    h = Handedness::Right;
  }
  return Witness{a, t.a_star, t.b_star, h, left_boundary || right_boundary,
                 t.verified, t.budget};
}

}  // namespace

Witness classify(const HermitianOp& a, const OptConfig& cfg) {
  if (hs_norm(a) < 1e-12) {
    throw std::invalid_argument("classify: zero operator");
  }
  const SpectralDecomp d = spectral_decomp(a);
  const Thresholds t = compute_thresholds(a, cfg);
  return assemble(a, t, d.eigenvalues(0), d.eigenvalues(d.eigenvalues.size() - 1));
}

Witness classify_spectral(const HermitianOp& a, const OptConfig& cfg) {
  if (hs_norm(a) < 1e-12) {
    throw std::invalid_argument("classify_spectral: zero operator");
  }
  const SpectralDecomp d = spectral_decomp(a);
  const int n = static_cast<int>(d.eigenvalues.size());

  // Left scan: spans of eigenvectors below each strict spectral gap,
  // smallest first. A product-free span certifies a left witness; once a
  // span contains a product state every larger span does too.
  bool left = false;
  for (int k = 0; k + 1 < n && !left; ++k) {
    if (d.eigenvalues(k + 1) - d.eigenvalues(k) <= kHandednessTol) continue;
    Matrix proj = Matrix::Zero(a.dim(), a.dim());
    for (int i = 0; i <= k; ++i) {
      proj += d.eigenvectors.col(i) * d.eigenvectors.col(i).adjoint();
    }
    const SubspaceResult s =
        subspace_contains_product(HermitianOp(a.dim_a(), a.dim_b(), proj), cfg);
    if (!s.contains) {
      left = true;
    } else {
      break;
    }
  }

  bool right = false;
  for (int k = n - 1; k > 0 && !right; --k) {
    if (d.eigenvalues(k) - d.eigenvalues(k - 1) <= kHandednessTol) continue;
    Matrix proj = Matrix::Zero(a.dim(), a.dim());
    for (int i = k; i < n; ++i) {
      proj += d.eigenvectors.col(i) * d.eigenvectors.col(i).adjoint();
    }
    const SubspaceResult s =
        subspace_contains_product(HermitianOp(a.dim_a(), a.dim_b(), proj), cfg);
    if (!s.contains) {
      right = true;
    } else {
      break;
    }
  }

  const Thresholds t = compute_thresholds(a, cfg);
  Witness w = assemble(a, t, d.eigenvalues(0), d.eigenvalues(n - 1));

  // The spectral scan and the threshold comparison are equivalent; if
  // numerics put them at odds, keep the threshold-based handedness (which
  // the Witness invariants are stated against) and flag the boundary.
  const bool tleft = w.handedness == Handedness::Left ||
                     w.handedness == Handedness::Ambidextrous;
  const bool tright = w.handedness == Handedness::Right ||
                      w.handedness == Handedness::Ambidextrous;
  if (left != tleft || right != tright) {
    w.boundary = true;
  }
  return w;
}

DetectVerdict detect(double rho_expectation, const Witness& w, double margin) {
  if (!w.verified) {
    throw std::invalid_argument("detect: witness thresholds are not verified");
  }
  if (w.a_star && rho_expectation < *w.a_star - margin) {
    return DetectVerdict::EntangledLeft;
  }
  if (w.b_star && rho_expectation > *w.b_star + margin) {
    return DetectVerdict::EntangledRight;
  }
  return DetectVerdict::Inconclusive;
}

BellCheck bell_inequality_check(double e11, double e22) {
  struct Candidate {
    double violation;
    BellState state;
  };
  const Candidate candidates[] = {
      {e11 - e22 - 0.5, BellState::PsiPlus},
      {-(e11 - e22) - 0.5, BellState::PsiMinus},
      {e11 + e22 - 0.5, BellState::PhiPlus},
      {-(e11 + e22) - 0.5, BellState::PhiMinus},
  };
  const Candidate* best = &candidates[0];
  for (const Candidate& c : candidates) {
    if (c.violation > best->violation) best = &c;
  }
  BellCheck out;
  out.violation = best->violation;
  out.entangled = best->violation > 0.0;
  if (out.entangled) out.implicated = best->state;
  return out;
}

std::vector<Vector> orthonormal_complement(const std::vector<ProductState>& b) {
  if (b.empty()) {
    throw std::invalid_argument("orthonormal_complement: empty basis");
  }
  const int dim_a = static_cast<int>(b.front().alpha.size());
  const int dim_b = static_cast<int>(b.front().beta.size());
  const int d = dim_a * dim_b;

  Matrix projector = Matrix::Zero(d, d);
  for (const ProductState& s : b) {
    const Vector v = s.joint();
    projector += v * v.adjoint();
  }
  const Matrix q = Matrix::Identity(d, d) - projector;
  const SpectralDecomp dec = hermitian_eig(q);

  std::vector<Vector> out;
  for (int i = 0; i < d; ++i) {
    if (dec.eigenvalues(i) > 0.5) out.push_back(dec.eigenvectors.col(i));
  }
  return out;
}

Witness witness_from_upb(const std::vector<ProductState>& b, const UpbSplit& split,
                         const OptConfig& cfg) {
  if (b.empty()) {
    throw std::invalid_argument("witness_from_upb: empty product basis");
  }
  const int dim_a = static_cast<int>(b.front().alpha.size());
  const int dim_b = static_cast<int>(b.front().beta.size());
  const int d = dim_a * dim_b;

  for (const ProductState& s : b) {
    if (s.alpha.size() != dim_a || s.beta.size() != dim_b) {
      throw std::invalid_argument("witness_from_upb: mixed dimensions in basis");
    }
  }
  for (size_t i = 0; i < b.size(); ++i) {
    for (size_t j = i + 1; j < b.size(); ++j) {
      if (std::abs((b[i].joint().adjoint() * b[j].joint())(0)) > kOrthoTol) {
        throw std::invalid_argument("witness_from_upb: basis is not orthonormal");
      }
    }
  }
  if (static_cast<int>(b.size()) >= d) {
    throw std::invalid_argument("witness_from_upb: basis has empty complement");
  }

  const std::vector<Vector> complement = orthonormal_complement(b);
  const int c = static_cast<int>(complement.size());

  Matrix q = Matrix::Zero(d, d);
  for (const Vector& v : complement) q += v * v.adjoint();
  const SubspaceResult upb =
      subspace_contains_product(HermitianOp(dim_a, dim_b, q), cfg);
  if (upb.contains) {
    throw std::invalid_argument(
        "witness_from_upb: complement contains a product state (basis is extendible)");
  }

  std::vector<char> seen(c, 0);
  auto mark = [&](const std::vector<int>& part) {
    for (int i : part) {
      if (i < 0 || i >= c || seen[i]) {
        throw std::invalid_argument("witness_from_upb: split is not a partition");
      }
      seen[i] = 1;
    }
  };
  mark(split.left);
  mark(split.right);
  for (char s : seen) {
    if (!s) {
      throw std::invalid_argument("witness_from_upb: split leaves complement vectors unassigned");
    }
  }

  if (!split.promoted.empty()) {
    Matrix pspan = Matrix::Zero(d, d);
    for (size_t i = 0; i < split.promoted.size(); ++i) {
      const Vector& e = split.promoted[i];
      if (e.size() != d || std::abs(e.norm() - 1.0) > kOrthoTol) {
        throw std::invalid_argument("witness_from_upb: promoted vectors must be unit vectors");
      }
      if ((q * e).norm() > 1e-8) {
        throw std::invalid_argument(
            "witness_from_upb: promoted vectors must lie in the span of the basis");
      }
      for (size_t j = i + 1; j < split.promoted.size(); ++j) {
        if (std::abs((e.adjoint() * split.promoted[j])(0)) > kOrthoTol) {
          throw std::invalid_argument("witness_from_upb: promoted vectors must be orthonormal");
        }
      }
      pspan += e * e.adjoint();
    }
    const SubspaceResult ps =
        subspace_contains_product(HermitianOp(dim_a, dim_b, pspan), cfg);
    if (ps.contains) {
      throw std::invalid_argument(
          "witness_from_upb: span of promoted vectors contains a product state");
    }
  }

  Matrix m = Matrix::Zero(d, d);
  for (int i : split.left) m -= complement[i] * complement[i].adjoint();
  for (int i : split.right) m += complement[i] * complement[i].adjoint();
  for (const Vector& e : split.promoted) m += e * e.adjoint();

  return classify(HermitianOp(dim_a, dim_b, m), cfg);
}

std::vector<ProductState> tiles_upb() {
  const double s = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  auto vec3 = [](double x, double y, double z) {
    Vector v(3);
    v << Complex(x, 0), Complex(y, 0), Complex(z, 0);
    return v;
  };
  std::vector<ProductState> out;
  out.emplace_back(vec3(1, 0, 0), vec3(s, -s, 0));
  out.emplace_back(vec3(0, 0, 1), vec3(0, s, -s));
  out.emplace_back(vec3(s, -s, 0), vec3(0, 0, 1));
  out.emplace_back(vec3(0, s, -s), vec3(1, 0, 0));
  out.emplace_back(vec3(t, t, t), vec3(t, t, t));
  return out;
}

nlohmann::json witness_to_json(const Witness& w, const ObservableBasis& basis) {
  const CoeffVector c = vectorize(w.op, basis);
  const double trace_part =
      (basis.element_matrix(0).array().conjugate() * w.op.entries().array())
          .sum()
          .real();

  nlohmann::json j;
  j["schema"] = 1;
  j["dims"] = {w.op.dim_a(), w.op.dim_b()};
  j["basis_coefficients"] = std::vector<double>(
      c.values.data(), c.values.data() + c.values.size());
  j["trace_part"] = trace_part;
  j["a_star"] = w.a_star ? nlohmann::json(*w.a_star) : nlohmann::json(nullptr);
  j["b_star"] = w.b_star ? nlohmann::json(*w.b_star) : nlohmann::json(nullptr);
  j["handedness"] = handedness_name(w.handedness);
  j["boundary"] = w.boundary;
  j["verified"] = w.verified;
  j["verification_budget"] = {{"starts", w.verification_budget.starts},
                              {"max_iters", w.verification_budget.max_iters},
                              {"tol", w.verification_budget.tol},
                              {"seed", w.verification_budget.seed}};
  return j;
}

}  // namespace ewsearch
