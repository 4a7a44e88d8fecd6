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

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "ewsearch/product_opt.hpp"

namespace ewsearch {

/// Which side(s) of the separable set an operator can detect on.
/// Left: some state scores below every separable state. Right: some state
/// scores above every separable state. Ambidextrous: both.
enum class Handedness { None, Left, Right, Ambidextrous };

const char* handedness_name(Handedness h);

/// The product-state expectation range [a_star, b_star] of an operator.
/// Every separable state scores inside it.
struct Sandwich {
  double a_star;
  double b_star;
};

/// A classified operator together with its detection thresholds.
///
/// a_star / b_star are the product-state minimum and maximum estimated by
/// the multistart optimizer; they are absent only when classification did
/// not need the corresponding side. verified means a re-run at the
/// escalated verification_budget reproduced both thresholds within 1e-8 and
/// every optimizer run converged. boundary flags operators whose spectrum
/// touches a threshold within the strictness margin, where handedness is
/// numerically ambiguous.
struct Witness {
  HermitianOp op;
  std::optional<double> a_star;
  std::optional<double> b_star;
  Handedness handedness;
  bool boundary;
  bool verified;
  OptConfig verification_budget;
};

/// Strictness margin between an eigenvalue and a threshold before a side is
/// declared; operators inside the margin get the boundary flag instead.
inline constexpr double kHandednessTol = 1e-9;

/// Classify by direct threshold comparison: left iff
/// lambda_min < a_star - tol, right iff lambda_max > b_star + tol.
Witness classify(const HermitianOp& a, const OptConfig& cfg = {});

/// Classify by scanning spectral gaps: the operator is a left witness
/// exactly when some bottom eigenspace span below a strict gap contains no
/// product state (mirrored scan for right). Thresholds are then filled in
/// as in classify; the two procedures agree on handedness.
Witness classify_spectral(const HermitianOp& a, const OptConfig& cfg = {});

enum class DetectVerdict { EntangledLeft, EntangledRight, Inconclusive };

/// Compare a measured expectation against the witness thresholds. margin
/// widens both thresholds, typically by the measurement error.
DetectVerdict detect(double rho_expectation, const Witness& w, double margin = 0.0);

/// Two-observable entanglement test from <x(x)x> and <y(x)y> expectations
/// (unit Hilbert-Schmidt normalization). Entangled when any of
/// |e11 + e22| or |e11 - e22| exceeds 1/2; implicated names the maximally
/// entangled state consistent with the violated combination.
struct BellCheck {
  bool entangled;
  std::optional<BellState> implicated;
  double violation;
};

BellCheck bell_inequality_check(double e11, double e22);

/// How to place eigenvalues on the orthocomplement of a partial product
/// basis. left/right partition the complement basis indices between the -1
/// and +1 eigenspaces; promoted lists additional orthonormal entangled
/// vectors inside the span of the product basis to place at +1.
struct UpbSplit {
  std::vector<int> left;
  std::vector<int> right;
  std::vector<Vector> promoted;
};

/// Deterministic orthonormal basis of the orthocomplement of the span of b.
std::vector<Vector> orthonormal_complement(const std::vector<ProductState>& b);

/// Build a witness from an unextendible product basis: -1 on the left part
/// of the complement, +1 on the right part and on the promoted vectors.
/// Verifies orthonormality, the no-product-state property of the
/// complement, and (when present) of the span of the promoted vectors; the
/// result is classified before being returned.
Witness witness_from_upb(const std::vector<ProductState>& b, const UpbSplit& split,
                         const OptConfig& cfg = {});

/// The five-state 3x3 tiles product basis, whose orthocomplement contains
/// no product state. Verified by tests at load.
std::vector<ProductState> tiles_upb();

nlohmann::json witness_to_json(const Witness& w, const ObservableBasis& basis);

}  // namespace ewsearch
