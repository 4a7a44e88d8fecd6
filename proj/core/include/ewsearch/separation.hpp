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

#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ewsearch/witness.hpp"

namespace ewsearch {

/// Measured expectation data to be tested for membership in the projected
/// separable set. coords holds the expectations over the measured basis
/// indices; delta is the membership tolerance; error_radius is the radius
/// of the measurement-error ball around the coordinates.
struct TargetPoint {
  CoeffVector coords;
  double delta = 0.01;
  double error_radius = 0.0;
};

/// Radius of the ball of separable states around the maximally mixed state
/// in coefficient space, 1/sqrt(d(d-1)) for total dimension d. Its inverse
/// bounds the polar body.
double separable_ball_radius(int dim_a, int dim_b);

enum class SolverEngine { Ellipsoid, Accp };

struct SolverConfig {
  OptConfig opt;
  /// Multistart budget for oracle calls inside the cutting-plane loop.
  /// Candidate answers are always re-verified at the escalated opt budget,
  /// so the loop budget trades speed against rejected candidates, never
  /// against soundness.
  int oracle_starts = 16;
  SolverEngine engine = SolverEngine::Ellipsoid;
};

/// Outer approximation of the feasible region: the ellipsoid
/// {x : (x - center)^T shape^{-1} (x - center) <= 1}.
struct OuterApprox {
  RealVector center;
  RealMatrix shape;
};

/// A halfspace constraint normal . x <= offset known to contain the
/// feasible region.
struct Cut {
  RealVector normal;
  double offset;
};

/// Separation oracle contract: return a cut excluding the query point, or
/// nothing when the query point belongs to the target set.
using SepOracle = std::function<std::optional<Cut>(const RealVector&)>;

/// Membership of y in the polar of the projected separable set. When the
/// product-state maximum b of the devectorized operator exceeds 1, the
/// maximizer's projection k yields the separating plane k . x <= 1 (valid
/// unconditionally, because k is an actual separable projection). verified
/// is false only for a non-converged in_polar assertion.
struct PolarResult {
  bool in_polar;
  std::optional<CoeffVector> cut;
  double value;
  bool verified;
};

PolarResult ssep_polar(const CoeffVector& y, const ObservableBasis& basis,
                       const OptConfig& cfg = {});

/// Separation for Q_p = polar intersected with {c : p . c >= 1}: below the
/// plane the cut is -p itself; otherwise the polar oracle decides.
struct QpResult {
  bool in_qp;
  std::optional<Cut> cut;
  bool verified;
};

QpResult ssep_qp(const CoeffVector& y, const TargetPoint& p,
                 const ObservableBasis& basis, const OptConfig& cfg = {});

struct FeasStats {
  long iterations = 0;
  long oracle_calls = 0;
  long iteration_cap = 0;
  /// Largest per-iteration det(shape) ratio observed (1 would mean no
  /// shrink; central cuts guarantee strict decrease).
  double max_det_ratio = 0.0;
  bool hit_volume_floor = false;
};

struct FeasResult {
  enum class Kind { Point, Empty, Unverified } kind;
  RealVector point;
  std::string reason;
  FeasStats stats;
};

/// Convex feasibility by cutting planes over a ball of radius R: query the
/// oracle at the center, halt on membership, otherwise shrink the outer
/// approximation with a central cut. Asserts emptiness once the outer
/// approximation's volume falls below that of a ball of radius delta_prime.
FeasResult feas_cutting_plane(const SepOracle& oracle, int n, double R,
                              double delta_prime,
                              SolverEngine engine = SolverEngine::Ellipsoid);

/// Final answer of the witness search.
struct WitnessCertificate {
  /// Unit-norm coefficient direction over the measured indices.
  CoeffVector direction;
  /// Product-state maximum of the devectorized direction at escalated
  /// budget; every separable state scores at or below it.
  double threshold;
  /// direction . p - threshold, the detection strength.
  double margin;
  Witness tightened;
};

struct SeparationVerdict {
  enum class Outcome { Witness, Member, Unverified } outcome;
  std::optional<WitnessCertificate> witness;
  std::optional<double> delta_effective;
  std::string reason;
  /// Verdict sits within 2*delta of flipping.
  bool boundary = false;
  long iterations = 0;
  long oracle_calls = 0;
  /// Iteration budget of the cutting-plane engine for this run.
  long iteration_cap = 0;
  /// Largest per-iteration det(shape) ratio observed by the engine.
  double max_det_ratio = 0.0;
  double wall_time_s = 0.0;
};

/// Decide whether a witness for p exists in the span of the measured
/// observables, or assert membership of p in the delta-neighborhood of the
/// projected separable set. Witness outcomes are re-verified at escalated
/// budget and by separable sampling before emission; failed candidates are
/// converted into valid cuts and the search resumes.
SeparationVerdict wsep(const TargetPoint& p, const ObservableBasis& basis,
                       const SolverConfig& cfg = {});

/// Verdict serialization. include_timing=false writes null wall_time so
/// that equal inputs produce byte-identical output.
nlohmann::json verdict_to_json(const SeparationVerdict& v,
                               const ObservableBasis& basis,
                               bool include_timing = false);

}  // namespace ewsearch
