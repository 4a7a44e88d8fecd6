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
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ewsearch/basis.hpp"
#include "ewsearch/separation.hpp"
#include "ewsearch/states.hpp"
#include "support/random_ops.hpp"

using namespace ewsearch;

namespace {

// Expectation data of a two-qubit Werner state over a coordinate subset.
TargetPoint werner_point(double p, std::vector<int> indices, double delta = 0.01) {
  const ObservableBasis basis = build_basis(2, 2);
  const DensityMatrix rho = werner(p);
  RealVector vals(static_cast<int>(indices.size()));
  for (size_t k = 0; k < indices.size(); ++k) {
    vals(static_cast<int>(k)) =
        expectation(basis.element(indices[k]), rho);
  }
  TargetPoint out;
  out.coords = CoeffVector(std::move(indices), std::move(vals));
  out.delta = delta;
  return out;
}

std::vector<int> full_indices() {
  std::vector<int> idx;
  for (int i = 1; i < 16; ++i) idx.push_back(i);
  return idx;
}

}  // namespace

TEST_SUITE_BEGIN("separation");

TEST_CASE("separable ball radius") {
  CHECK(separable_ball_radius(2, 2) == doctest::Approx(1.0 / std::sqrt(12.0)));
  CHECK(separable_ball_radius(2, 3) == doctest::Approx(1.0 / std::sqrt(30.0)));
  CHECK(separable_ball_radius(3, 3) == doctest::Approx(1.0 / std::sqrt(72.0)));
}

TEST_CASE("polar membership oracle on known directions") {
  const ObservableBasis basis = build_basis(2, 2);

  RealVector zero(1);
  zero << 0.0;
  const PolarResult origin = ssep_polar(CoeffVector({5}, zero), basis);
  CHECK(origin.in_polar);
  CHECK(origin.value == doctest::Approx(0.0));

  RealVector one(1);
  one << 1.0;
  const PolarResult unit = ssep_polar(CoeffVector({5}, one), basis);
  CHECK(unit.in_polar);
  CHECK(unit.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_FALSE(unit.cut.has_value());

  RealVector three(1);
  three << 3.0;
  const CoeffVector y3({5}, three);
  const PolarResult out = ssep_polar(y3, basis);
  CHECK_FALSE(out.in_polar);
  CHECK(out.value == doctest::Approx(1.5).epsilon(1e-9));
  REQUIRE(out.cut.has_value());
  CHECK(out.verified);
  // The separating plane actually excludes the query.
  CHECK(dot(*out.cut, y3) > 1.0);
}

TEST_CASE("polar cuts hold on the whole projected separable set") {
  const ObservableBasis basis = build_basis(2, 2);
  RealVector vals(2);
  vals << 2.4, -2.4;
  const CoeffVector y({5, 10}, vals);
  const PolarResult r = ssep_polar(y, basis);
  REQUIRE(r.cut.has_value());

  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    const ProductState s = random_product_state(2, 2, rng);
    const DensityMatrix rho = product_state_density(s);
    double kx = 0.0;
    for (int k = 0; k < r.cut->size(); ++k) {
      kx += r.cut->values(k) *
            expectation(basis.element(r.cut->indices[k]), rho);
    }
    CHECK(kx <= 1.0 + 1e-9);
  }
}

TEST_CASE("target-plane separation in ssep_qp") {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.6, {5, 10});

  // Query below the target plane: the cut is the plane itself.
  RealVector low(2);
  low << 0.1, 0.0;
  const QpResult below = ssep_qp(CoeffVector({5, 10}, low), p, basis);
  CHECK_FALSE(below.in_qp);
  REQUIRE(below.cut.has_value());
  CHECK(below.cut->offset == doctest::Approx(-1.0));
  CHECK((below.cut->normal + p.coords.values).norm() < 1e-14);

  // Query above the plane but outside the polar.
  RealVector big(2);
  big << 4.0, -4.0;
  const QpResult outside = ssep_qp(CoeffVector({5, 10}, big), p, basis);
  CHECK_FALSE(outside.in_qp);
  REQUIRE(outside.cut.has_value());
  CHECK(outside.cut->offset == doctest::Approx(1.0));

  // A genuine witness direction for this target: inside both constraints.
  RealVector good(2);
  good << 1.8, -1.8;
  const QpResult inside = ssep_qp(CoeffVector({5, 10}, good), p, basis);
  CHECK(inside.in_qp);
  CHECK(inside.verified);

  // Mismatched index sets are rejected.
  RealVector one(1);
  one << 1.0;
  CHECK_THROWS(ssep_qp(CoeffVector({5}, one), p, basis));
}

TEST_CASE("cutting-plane engine returns the center when it is feasible") {
  const SepOracle happy = [](const RealVector&) { return std::nullopt; };
  for (SolverEngine engine : {SolverEngine::Ellipsoid, SolverEngine::Accp}) {
    const FeasResult r = feas_cutting_plane(happy, 3, 1.0, 1e-3, engine);
    CHECK(r.kind == FeasResult::Kind::Point);
    CHECK(r.point.norm() < 1e-12);
    CHECK(r.stats.iterations == 0);
    CHECK(r.stats.oracle_calls == 1);
  }
}

TEST_CASE("an oracle that always cuts drives the ellipsoid to the volume floor") {
  SepOracle push = [](const RealVector& x) {
    RealVector g = RealVector::Zero(x.size());
    g(0) = 1.0;
    return Cut{g, x(0)};
  };
  const FeasResult r = feas_cutting_plane(push, 2, 1.0, 1e-3);
  CHECK(r.kind == FeasResult::Kind::Empty);
  CHECK(r.stats.hit_volume_floor);
  CHECK(r.stats.iterations <= r.stats.iteration_cap);
  // Central-cut volume guarantee, stated on the shape determinant.
  CHECK(r.stats.max_det_ratio <= std::exp(-1.0 / (2.0 * 3.0)) + 1e-6);
}

TEST_CASE("rotating central cuts also certify emptiness") {
  // Cuts whose normals sweep the circle; all pass through the center, which
  // is vacuously valid for an empty feasible set.
  int k = 0;
  SepOracle sweep = [&k](const RealVector& x) {
    const double angle = 2.39996 * ++k;
    RealVector g(2);
    g << std::cos(angle), std::sin(angle);
    return Cut{g, g.dot(x)};
  };
  const FeasResult r = feas_cutting_plane(sweep, 2, 1.0, 1e-3);
  CHECK(r.kind == FeasResult::Kind::Empty);
  CHECK(r.stats.hit_volume_floor);
  CHECK(r.stats.iterations <= r.stats.iteration_cap);
  CHECK(r.stats.max_det_ratio <= std::exp(-1.0 / 6.0) + 1e-6);
}

TEST_CASE("one-dimensional search halves intervals down to the floor") {
  SepOracle push = [](const RealVector& x) {
    RealVector g(1);
    g << 1.0;
    return Cut{g, x(0)};
  };
  const FeasResult r = feas_cutting_plane(push, 1, 1.0, 1e-6);
  CHECK(r.kind == FeasResult::Kind::Empty);
  CHECK(r.stats.hit_volume_floor);
  CHECK(r.stats.iterations <= r.stats.iteration_cap);
  CHECK(r.stats.max_det_ratio <= std::exp(-1.0 / 4.0) + 1e-6);
}

TEST_CASE("a cut deeper than the whole ellipsoid proves emptiness immediately") {
  SepOracle far = [](const RealVector& x) {
    RealVector g(2);
    g << 1.0, 0.0;
    // The claimed feasible halfspace x1 <= -5 misses the radius-1 ball.
    return Cut{g, -5.0};
  };
  const FeasResult r = feas_cutting_plane(far, 2, 1.0, 1e-3);
  CHECK(r.kind == FeasResult::Kind::Empty);
  CHECK(r.stats.iterations <= 1);
}

TEST_CASE("degenerate cuts are reported instead of looping") {
  const SepOracle zero_normal = [](const RealVector& x) {
    return Cut{RealVector::Zero(x.size()), 0.0};
  };
  for (SolverEngine engine : {SolverEngine::Ellipsoid, SolverEngine::Accp}) {
    const FeasResult r = feas_cutting_plane(zero_normal, 2, 1.0, 1e-3, engine);
    CHECK(r.kind == FeasResult::Kind::Unverified);
    CHECK_FALSE(r.reason.empty());
  }
}

TEST_CASE("cuts satisfied at the query point are rejected as oracle errors") {
  const SepOracle lazy = [](const RealVector& x) {
    RealVector g(2);
    g << 1.0, 0.0;
    return Cut{g, x(0) + 10.0};
  };
  const FeasResult r = feas_cutting_plane(lazy, 2, 1.0, 1e-3);
  CHECK(r.kind == FeasResult::Kind::Unverified);
}

TEST_CASE("feasibility geometry parameters are validated") {
  const SepOracle happy = [](const RealVector&) { return std::nullopt; };
  CHECK_THROWS(feas_cutting_plane(happy, 0, 1.0, 1e-3));
  CHECK_THROWS(feas_cutting_plane(happy, 2, -1.0, 1e-3));
  CHECK_THROWS(feas_cutting_plane(happy, 2, 1.0, 0.0));
  CHECK_THROWS(feas_cutting_plane(happy, 2, 1.0, 2.0));
}

TEST_CASE("wsep validates its inputs") {
  const ObservableBasis basis = build_basis(2, 2);
  TargetPoint p = werner_point(0.6, {5, 10});

  p.delta = 0.0;
  CHECK_THROWS(wsep(p, basis));
  p.delta = -1.0;
  CHECK_THROWS(wsep(p, basis));
  p.delta = 0.01;

  p.error_radius = -0.1;
  CHECK_THROWS(wsep(p, basis));
  p.error_radius = 0.0;

  TargetPoint empty;
  CHECK_THROWS(wsep(empty, basis));

  RealVector one(1);
  one << 0.5;
  TargetPoint outside;
  outside.coords = CoeffVector({16}, one);
  CHECK_THROWS(wsep(outside, basis));
}

TEST_CASE("data inside the separable ball is accepted without a search") {
  const ObservableBasis basis = build_basis(2, 2);
  const SeparationVerdict v = wsep(werner_point(0.2, full_indices()), basis);
  CHECK(v.outcome == SeparationVerdict::Outcome::Member);
  CHECK(v.iterations == 0);
  CHECK(v.oracle_calls == 0);
  CHECK_FALSE(v.boundary);
  REQUIRE(v.delta_effective.has_value());
  CHECK(*v.delta_effective == doctest::Approx(0.01));
}

TEST_CASE("ball membership close to the surface raises the boundary flag") {
  const ObservableBasis basis = build_basis(2, 2);
  // Two-coordinate data at norm 0.283, within 2*delta of the 0.2887 radius.
  const SeparationVerdict v = wsep(werner_point(0.4, {5, 10}), basis);
  CHECK(v.outcome == SeparationVerdict::Outcome::Member);
  CHECK(v.boundary);
}

TEST_CASE("error radius widens the effective tolerance") {
  const ObservableBasis basis = build_basis(2, 2);
  TargetPoint p = werner_point(0.2, full_indices());
  p.error_radius = 0.05;
  const SeparationVerdict v = wsep(p, basis);
  REQUIRE(v.delta_effective.has_value());
  CHECK(*v.delta_effective == doctest::Approx(0.06));
}

TEST_CASE("wsep finds a witness for an entangled Werner state on the full span") {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.4, full_indices());
  const SeparationVerdict v = wsep(p, basis);
  REQUIRE(v.outcome == SeparationVerdict::Outcome::Witness);
  REQUIRE(v.witness.has_value());
  const WitnessCertificate& cert = *v.witness;

  // Unit direction, internally consistent margin.
  CHECK(cert.direction.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cert.margin == doctest::Approx(dot(cert.direction, p.coords) -
                                       cert.threshold).epsilon(1e-12));
  CHECK(cert.margin > 0.0);

  // No sampled separable state beats the certified threshold.
  std::mt19937_64 rng(66);
  const HermitianOp w = devectorize(cert.direction, basis, 0.0);
  for (int i = 0; i < 500; ++i) {
    CHECK(expectation(w, random_product_state(2, 2, rng)) <=
          cert.threshold + 1e-8);
  }
  CHECK(expectation(w, testing::random_separable(2, 2, 4, rng)) <=
        cert.threshold + 1e-8);
}

TEST_CASE("wsep detects strong entanglement with a wide margin") {
  const ObservableBasis basis = build_basis(2, 2);
  const SeparationVerdict v = wsep(werner_point(0.9, full_indices()), basis);
  REQUIRE(v.outcome == SeparationVerdict::Outcome::Witness);
  CHECK(v.witness->margin > 0.1);
  CHECK_FALSE(v.boundary);
  const Handedness h = v.witness->tightened.handedness;
  CHECK((h == Handedness::Right || h == Handedness::Ambidextrous));
}

TEST_CASE("two-observable data reproduces the inequality-based verdicts") {
  const ObservableBasis basis = build_basis(2, 2);

  const SeparationVerdict strong = wsep(werner_point(0.6, {5, 10}), basis);
  REQUIRE(strong.outcome == SeparationVerdict::Outcome::Witness);
  CHECK(strong.witness->margin > 0.0);

  const SeparationVerdict weak = wsep(werner_point(0.45, {5, 10}), basis);
  CHECK(weak.outcome == SeparationVerdict::Outcome::Member);

  // Both engine backends agree on both sides of the threshold.
  SolverConfig accp;
  accp.engine = SolverEngine::Accp;
  CHECK(wsep(werner_point(0.6, {5, 10}), basis, accp).outcome ==
        SeparationVerdict::Outcome::Witness);
  CHECK(wsep(werner_point(0.45, {5, 10}), basis, accp).outcome ==
        SeparationVerdict::Outcome::Member);
}

TEST_CASE("phi-type correlations are caught through the complementary direction") {
  const ObservableBasis basis = build_basis(2, 2);
  RealVector vals(2);
  vals << 0.35, 0.35;
  TargetPoint p;
  p.coords = CoeffVector({5, 10}, vals);
  const SeparationVerdict v = wsep(p, basis);
  REQUIRE(v.outcome == SeparationVerdict::Outcome::Witness);
  // The detecting direction points along (1, 1): both coefficients positive.
  CHECK(v.witness->direction.values(0) > 0.1);
  CHECK(v.witness->direction.values(1) > 0.1);
}

TEST_CASE("single-coordinate data runs the interval engine") {
  const ObservableBasis basis = build_basis(2, 2);

  RealVector e(1);
  e << 0.6;
  TargetPoint hot;
  hot.coords = CoeffVector({15}, e);
  const SeparationVerdict won = wsep(hot, basis);
  REQUIRE(won.outcome == SeparationVerdict::Outcome::Witness);
  CHECK(won.witness->margin == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(won.witness->threshold == doctest::Approx(0.5).epsilon(1e-8));

  e << 0.45;
  TargetPoint cold;
  cold.coords = CoeffVector({15}, e);
  const SeparationVerdict lost = wsep(cold, basis);
  CHECK(lost.outcome == SeparationVerdict::Outcome::Member);
}

TEST_CASE("more measured observables can only strengthen the verdict") {
  // Werner 0.8 seen through one, two, and all coordinates: member on the
  // single symmetric coordinate, witness as soon as the violated pair is
  // visible, still a witness with everything measured.
  const ObservableBasis basis = build_basis(2, 2);
  const SeparationVerdict one = wsep(werner_point(0.8, {5}), basis);
  CHECK(one.outcome == SeparationVerdict::Outcome::Member);
  CHECK_FALSE(one.boundary);

  const SeparationVerdict two = wsep(werner_point(0.8, {5, 10}), basis);
  REQUIRE(two.outcome == SeparationVerdict::Outcome::Witness);
  CHECK(two.witness->margin > 0.1);

  const SeparationVerdict all = wsep(werner_point(0.8, full_indices()), basis);
  REQUIRE(all.outcome == SeparationVerdict::Outcome::Witness);
  CHECK(all.witness->margin > 0.1);
}

TEST_CASE("engine statistics respect the analytic shrink guarantee") {
  const ObservableBasis basis = build_basis(2, 2);
  for (double p : {0.45, 0.6}) {
    const SeparationVerdict v = wsep(werner_point(p, {5, 10}), basis);
    CHECK(v.iterations <= v.iteration_cap);
    if (v.iterations > 0) {
      CHECK(v.max_det_ratio <= std::exp(-1.0 / 6.0) + 1e-6);
    }
  }
}

TEST_CASE("verdict serialization is deterministic and carries the verdict") {
  const ObservableBasis basis = build_basis(2, 2);
  const TargetPoint p = werner_point(0.6, {5, 10});
  const SeparationVerdict v1 = wsep(p, basis);
  const SeparationVerdict v2 = wsep(p, basis);
  const nlohmann::json j1 = verdict_to_json(v1, basis);
  const nlohmann::json j2 = verdict_to_json(v2, basis);
  CHECK(j1.dump() == j2.dump());

  CHECK(j1["schema"] == 1);
  CHECK(j1["outcome"] == "witness");
  CHECK(j1["wall_time"].is_null());
  REQUIRE(j1.contains("witness"));
  CHECK(j1["witness"]["labels"][0] == "s1*s1");
  CHECK(j1["witness"]["indices"][1] == 10);

  const nlohmann::json timed = verdict_to_json(v1, basis, true);
  CHECK(timed["wall_time"].is_number());

  const nlohmann::json member =
      verdict_to_json(wsep(werner_point(0.2, full_indices()), basis), basis);
  CHECK(member["outcome"] == "member");
  CHECK(member["delta_effective"].get<double>() == doctest::Approx(0.01));
  CHECK_FALSE(member.contains("witness"));
}

TEST_SUITE_END();
