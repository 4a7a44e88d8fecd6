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
#include "ewsearch/separation.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ewsearch {

double separable_ball_radius(int dim_a, int dim_b) {
  const double d = static_cast<double>(dim_a) * dim_b;
  return 1.0 / std::sqrt(d * (d - 1.0));
}

PolarResult ssep_polar(const CoeffVector& y, const ObservableBasis& basis,
                       const OptConfig& cfg) {
  const WeakOptResult w = weak_opt_oracle(y, basis, cfg);
  if (w.max_value > 1.0) {
    // The plane k . x <= 1 holds on the whole polar because k is the
    // projection of an actual product state; it excludes y since
    // k . y = max_value > 1. Valid whether or not the optimizer converged.
    return PolarResult{false, w.maximizer, w.max_value, true};
  }
  return PolarResult{true, std::nullopt, w.max_value, w.converged};
}

QpResult ssep_qp(const CoeffVector& y, const TargetPoint& p,
                 const ObservableBasis& basis, const OptConfig& cfg) {
  if (y.indices != p.coords.indices) {
    throw std::invalid_argument("ssep_qp: query and target use different index sets");
  }
  const double py = dot(p.coords, y);
  if (py < 1.0) {
    return QpResult{false, Cut{-p.coords.values, -1.0}, true};
  }
  const PolarResult pr = ssep_polar(y, basis, cfg);
  if (pr.cut) {
    return QpResult{false, Cut{pr.cut->values, 1.0}, true};
  }
  return QpResult{true, std::nullopt, pr.verified};
}

namespace {

double logdet_spd(const RealMatrix& p, bool* ok) {
  Eigen::LLT<RealMatrix> llt(p);
  if (llt.info() != Eigen::Success) {
    *ok = false;
    return 0.0;
  }
  *ok = true;
  double s = 0.0;
  const RealMatrix l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

// Minimum-volume ellipsoid containing the part of (omega, P) on the
// feasible side of a cut at relative depth alpha in [-1/n, 1); alpha = 0 is
// the central cut through the center.
void apply_ellipsoid_cut(RealVector& omega, RealMatrix& p, const RealVector& g,
                         double alpha) {
  const int n = static_cast<int>(omega.size());
  if (n == 1) {
    const double h = std::sqrt(p(0, 0));
    const double u = g(0) >= 0.0 ? 1.0 : -1.0;
    omega(0) -= u * h * (1.0 + alpha) / 2.0;
    const double hn = h * (1.0 - alpha) / 2.0;
    p(0, 0) = hn * hn;
    return;
  }
  const double gpg = g.dot(p * g);
  const RealVector gt = (p * g) / std::sqrt(gpg);
  const double nn = static_cast<double>(n);
  const double tau = (1.0 + nn * alpha) / (nn + 1.0);
  const double sigma = 2.0 * (1.0 + nn * alpha) / ((nn + 1.0) * (1.0 + alpha));
  const double dil = (nn * nn / (nn * nn - 1.0)) * (1.0 - alpha * alpha);
  omega -= tau * gt;
  p = dil * (p - sigma * (gt * gt.transpose()));
  p = 0.5 * (p + p.transpose()).eval();
}

bool repair_pd(RealMatrix& p) {
  bool ok = false;
  logdet_spd(p, &ok);
  if (ok) return true;
  p = 0.5 * (p + p.transpose()).eval();
  p += (1e-12 * p.trace() / p.rows()) * RealMatrix::Identity(p.rows(), p.cols());
  logdet_spd(p, &ok);
  return ok;
}

FeasResult feas_ellipsoid(const SepOracle& oracle, int n, double big_r,
                          double delta_prime) {
  FeasStats st;
  st.iteration_cap =
      static_cast<long>(std::ceil(2.0 * n * (n + 1) * std::log(big_r / delta_prime))) + 1;

  RealVector omega = RealVector::Zero(n);
  RealMatrix p = big_r * big_r * RealMatrix::Identity(n, n);
  const double floor_logdet = 2.0 * n * std::log(delta_prime);
  double logdet = 2.0 * n * std::log(big_r);

  while (true) {
    if (logdet < floor_logdet) {
      st.hit_volume_floor = true;
      return FeasResult{FeasResult::Kind::Empty, omega, "", st};
    }
    if (st.iterations >= st.iteration_cap) {
      return FeasResult{FeasResult::Kind::Unverified, omega,
                        "iteration cap reached before volume floor", st};
    }
    ++st.oracle_calls;
    const std::optional<Cut> cut = oracle(omega);
    if (!cut) {
      return FeasResult{FeasResult::Kind::Point, omega, "", st};
    }
    double gpg = cut->normal.dot(p * cut->normal);
    if (!(gpg > 0.0) || !std::isfinite(gpg)) {
      // Repeated nearly-parallel cuts can squeeze the shape matrix until the
      // width along the new normal falls below double precision. Lift the
      // spectrum once; if the direction is still degenerate, bail out rather
      // than re-query an unchanged center.
      p = 0.5 * (p + p.transpose()).eval();
      p += (1e-12 * std::abs(p.trace()) / p.rows()) *
           RealMatrix::Identity(p.rows(), p.cols());
      gpg = cut->normal.dot(p * cut->normal);
      if (!(gpg > 0.0) || !std::isfinite(gpg)) {
        return FeasResult{FeasResult::Kind::Unverified, omega,
                          "shape matrix degenerate along cut normal", st};
      }
    }

    // Depth of the returned halfspace below the center, in ellipsoid units.
    // Every cut keeps the feasible set, so depth >= 1 means the feasible set
    // misses the current ellipsoid entirely: empty, no volume argument needed.
    const double alpha = (cut->normal.dot(omega) - cut->offset) / std::sqrt(gpg);
    if (alpha >= 1.0) {
      return FeasResult{FeasResult::Kind::Empty, omega,
                        "cut excludes the entire bounding ellipsoid", st};
    }
    if (alpha < -1e-9) {
      return FeasResult{FeasResult::Kind::Unverified, omega,
                        "oracle returned a cut satisfied at the query point", st};
    }
    apply_ellipsoid_cut(omega, p, cut->normal, 0.0);
    ++st.iterations;

    bool ok = false;
    double next = logdet_spd(p, &ok);
    if (!ok) {
      if (!repair_pd(p)) {
        return FeasResult{FeasResult::Kind::Unverified, omega,
                          "shape matrix lost positive definiteness", st};
      }
      next = logdet_spd(p, &ok);
      if (!ok) {
        return FeasResult{FeasResult::Kind::Unverified, omega,
                          "shape matrix lost positive definiteness", st};
      }
    }
    st.max_det_ratio = std::max(st.max_det_ratio, std::exp(next - logdet));
    logdet = next;
  }
}

// Analytic-center engine: cuts are collected into a polytope (intersected
// with the bounding ball) and the oracle is queried at an approximate
// analytic center. Emptiness certificates come from a deep-cut ellipsoid
// maintained alongside, so member assertions rest on the same volume
// argument as the baseline engine.
class AccpState {
 public:
  AccpState(int n, double big_r) : n_(n), big_r_(big_r), x_(RealVector::Zero(n)) {}

  double slack(size_t i, const RealVector& x) const {
    return offsets_[i] - normals_[i].dot(x);
  }
  double ball_slack(const RealVector& x) const {
    return big_r_ * big_r_ - x.squaredNorm();
  }

  bool strictly_feasible(const RealVector& x) const {
    if (ball_slack(x) <= 0.0) return false;
    for (size_t i = 0; i < normals_.size(); ++i) {
      if (slack(i, x) <= 0.0) return false;
    }
    return true;
  }

  // Damped Newton descent on the log barrier from the current point.
  void recenter() { newton_descent(RealVector::Zero(n_), 0.0, normals_.size()); }

  // Restore strict feasibility after adding a cut that the current point
  // violates (or touches). The current point is strictly feasible for every
  // earlier constraint, so we minimize the barrier of those constraints plus
  // an increasingly strong linear pull along the new normal; the barrier
  // keeps the iterate strictly inside the old polytope while the pull drives
  // the new slack positive whenever the new polytope has an interior.
  bool restore(const RealVector& a, double b) {
    if (strictly_feasible(x_)) return true;
    const size_t m = normals_.size() - 1;  // constraints before the new cut
    double pull = 1.0;
    for (int round = 0; round < 60; ++round) {
      newton_descent(a, pull, m);
      if (a.dot(x_) < b - 1e-10 * (1.0 + std::abs(b)) && strictly_feasible(x_)) {
        return true;
      }
      pull *= 4.0;
    }
    return false;
  }

  void add_cut(const RealVector& a, double b) {
    normals_.push_back(a);
    offsets_.push_back(b);
  }

  const RealVector& x() const { return x_; }

 private:
  bool feasible_prefix(const RealVector& x, size_t m) const {
    if (ball_slack(x) <= 0.0) return false;
    for (size_t i = 0; i < m; ++i) {
      if (slack(i, x) <= 0.0) return false;
    }
    return true;
  }

  double objective(const RealVector& x, const RealVector& pull_dir, double pull,
                   size_t m) const {
    double f = -std::log(ball_slack(x)) + pull * pull_dir.dot(x);
    for (size_t i = 0; i < m; ++i) f -= std::log(slack(i, x));
    return f;
  }

  // Damped Newton with Armijo backtracking on the barrier of the ball and the
  // first m linear constraints, plus the linear term pull * pull_dir . x.
  void newton_descent(const RealVector& pull_dir, double pull, size_t m) {
    for (int step = 0; step < 80; ++step) {
      const double bs = ball_slack(x_);
      RealVector g = (2.0 / bs) * x_ + pull * pull_dir;
      RealMatrix h = (2.0 / bs) * RealMatrix::Identity(n_, n_) +
                     (4.0 / (bs * bs)) * (x_ * x_.transpose());
      for (size_t i = 0; i < m; ++i) {
        const double s = slack(i, x_);
        g += normals_[i] / s;
        h += (normals_[i] * normals_[i].transpose()) / (s * s);
      }
      Eigen::LLT<RealMatrix> llt(h);
      if (llt.info() != Eigen::Success) return;
      const RealVector delta = llt.solve(-g);
      const double decrement2 = -g.dot(delta);
      if (!(decrement2 > 1e-16)) return;

      double t = 1.0;
      const double f0 = objective(x_, pull_dir, pull, m);
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt) {
        const RealVector cand = x_ + t * delta;
        if (feasible_prefix(cand, m) &&
            objective(cand, pull_dir, pull, m) <= f0 - 1e-4 * t * decrement2) {
          x_ = cand;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) return;
    }
  }

  int n_;
  double big_r_;
  RealVector x_;
  std::vector<RealVector> normals_;
  std::vector<double> offsets_;
};

FeasResult feas_accp(const SepOracle& oracle, int n, double big_r,
                     double delta_prime) {
  FeasStats st;
  st.iteration_cap =
      4 * (static_cast<long>(std::ceil(2.0 * n * (n + 1) * std::log(big_r / delta_prime))) + 1);

  AccpState poly(n, big_r);
  RealVector ew = RealVector::Zero(n);
  RealMatrix ep = big_r * big_r * RealMatrix::Identity(n, n);
  const double floor_logdet = 2.0 * n * std::log(delta_prime);
  bool ok = true;
  double logdet = 2.0 * n * std::log(big_r);

  RealVector last_query = RealVector::Constant(n, std::numeric_limits<double>::infinity());
  int stalls = 0;

  while (true) {
    if (logdet < floor_logdet) {
      st.hit_volume_floor = true;
      return FeasResult{FeasResult::Kind::Empty, poly.x(), "", st};
    }
    if (st.iterations >= st.iteration_cap) {
      return FeasResult{FeasResult::Kind::Unverified, poly.x(),
                        "iteration cap reached before resolution", st};
    }

    const RealVector query = poly.x();
    if ((query - last_query).norm() < 1e-13) {
      if (++stalls > 3) {
        return FeasResult{FeasResult::Kind::Unverified, query,
                          "analytic center stalled", st};
      }
    } else {
      stalls = 0;
    }
    last_query = query;

    ++st.oracle_calls;
    const std::optional<Cut> cut = oracle(query);
    if (!cut) {
      return FeasResult{FeasResult::Kind::Point, query, "", st};
    }

    const double norm = cut->normal.norm();
    if (!(norm > 0.0)) {
      return FeasResult{FeasResult::Kind::Unverified, query, "degenerate cut", st};
    }
    const RealVector a = cut->normal / norm;
    const double b = cut->offset / norm;

    // Certificate ellipsoid: deep cut with the true offset.
    const double apa = a.dot(ep * a);
    if (apa > 0.0 && std::isfinite(apa)) {
      const double alpha = (a.dot(ew) - b) / std::sqrt(apa);
      if (alpha >= 1.0 - 1e-12) {
        return FeasResult{FeasResult::Kind::Empty, query,
                          "cut excludes the entire certificate ellipsoid", st};
      }
      if (alpha > -1.0 / n + 1e-12) {
        apply_ellipsoid_cut(ew, ep, a, alpha);
        double next = logdet_spd(ep, &ok);
        if (!ok && !repair_pd(ep)) {
          return FeasResult{FeasResult::Kind::Unverified, query,
                            "certificate shape matrix lost positive definiteness", st};
        }
        if (!ok) next = logdet_spd(ep, &ok);
        if (!ok) {
          return FeasResult{FeasResult::Kind::Unverified, query,
                            "certificate shape matrix lost positive definiteness", st};
        }
        st.max_det_ratio = std::max(st.max_det_ratio, std::exp(next - logdet));
        logdet = next;
      }
    }

    poly.add_cut(a, b);
    ++st.iterations;
    if (!poly.restore(a, b)) {
      if (logdet < floor_logdet) {
        st.hit_volume_floor = true;
        return FeasResult{FeasResult::Kind::Empty, poly.x(), "", st};
      }
      return FeasResult{FeasResult::Kind::Unverified, poly.x(),
                        "cut polytope has no interior", st};
    }
    poly.recenter();
  }
}

}  // namespace

FeasResult feas_cutting_plane(const SepOracle& oracle, int n, double big_r,
                              double delta_prime, SolverEngine engine) {
  if (n < 1 || !(big_r > 0.0) || !(delta_prime > 0.0) || delta_prime >= big_r) {
    throw std::invalid_argument("feas_cutting_plane: invalid geometry parameters");
  }
  if (engine == SolverEngine::Accp) {
    return feas_accp(oracle, n, big_r, delta_prime);
  }
  return feas_ellipsoid(oracle, n, big_r, delta_prime);
}

namespace {

struct PendingCertificate {
  RealVector y;
  double threshold_raw;
};

}  // namespace

SeparationVerdict wsep(const TargetPoint& p, const ObservableBasis& basis,
                       const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();

  if (!(p.delta > 0.0)) {
    throw std::invalid_argument("wsep: delta must be positive");
  }
  if (p.coords.size() == 0) {
    throw std::invalid_argument("wsep: no measured coordinates");
  }
  if (p.coords.indices.back() >= basis.size()) {
    throw std::invalid_argument("wsep: coordinate index outside basis");
  }
  if (p.error_radius < 0.0) {
    throw std::invalid_argument("wsep: negative error radius");
  }

  const int n = p.coords.size();
  const double r = separable_ball_radius(basis.dim_a(), basis.dim_b());
  const double big_r = 1.0 / r;
  const double delta_prime = p.delta * r / (1.0 + p.coords.values.norm());

  // Data inside the separable ball needs no search: padding the unmeasured
  // coordinates with zeros gives a separable state reproducing every record,
  // so no witness supported on the measured span can single the data out.
  if (p.coords.values.norm() <= r) {
    SeparationVerdict verdict;
    verdict.outcome = SeparationVerdict::Outcome::Member;
    verdict.delta_effective = p.delta + p.error_radius;
    verdict.boundary = r - p.coords.values.norm() <= 2.0 * p.delta;
    verdict.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return verdict;
  }

  OptConfig loop_cfg = cfg.opt;
  loop_cfg.starts = std::max(1, std::min(cfg.oracle_starts, cfg.opt.starts));
  const OptConfig verify_cfg = escalated(cfg.opt);

  // Fixed sample of product-state projections used to stress candidate
  // thresholds before emission.
  const int n_samples = 1000;
  std::vector<ProductState> samples;
  samples.reserve(n_samples);
  {
    std::mt19937_64 srng(cfg.opt.seed ^ 0x5eedb011dull);
    for (int i = 0; i < n_samples; ++i) {
      samples.push_back(random_product_state(basis.dim_a(), basis.dim_b(), srng));
    }
  }
  auto project_state = [&](const ProductState& s) {
    const Matrix rho = s.joint() * s.joint().adjoint();
    RealVector v(n);
    for (int k = 0; k < n; ++k) {
      v(k) = (basis.element_matrix(p.coords.indices[k]).array().conjugate() *
              rho.array()).sum().real();
    }
    return v;
  };

  std::optional<PendingCertificate> pending;
  double best_violation = -std::numeric_limits<double>::infinity();

  SepOracle oracle = [&](const RealVector& y) -> std::optional<Cut> {
    const double py = p.coords.values.dot(y);
    if (py < 1.0) {
      return Cut{-p.coords.values, -1.0};
    }
    const CoeffVector yc(p.coords.indices, y);
    const PolarResult quick = ssep_polar(yc, basis, loop_cfg);
    const double ynorm = y.norm();
    if (quick.cut) {
      best_violation = std::max(best_violation, (py - quick.value) / ynorm);
      return Cut{quick.cut->values, 1.0};
    }

    // The loop-budget oracle claims y lies in the polar, which would make y
    // a witness direction. Re-verify at escalated budget plus sampling; on
    // failure the better maximizer found is itself a valid cutting plane,
    // so the search resumes instead of giving up.
    const WeakOptResult strong = weak_opt_oracle(yc, basis, verify_cfg);
    const HermitianOp w_y = devectorize(yc, basis, 0.0);
    double threshold_raw = strong.max_value;
    RealVector cut_normal = strong.maximizer.values;
    for (const ProductState& s : samples) {
      const double val = expectation(w_y, s);
      if (val > threshold_raw) {
        threshold_raw = val;
        cut_normal = project_state(s);
      }
    }
    best_violation = std::max(best_violation, (py - threshold_raw) / ynorm);
    if (py > threshold_raw) {
      pending = PendingCertificate{y, threshold_raw};
      return std::nullopt;
    }
    return Cut{cut_normal, std::min(threshold_raw, 1.0)};
  };

  FeasResult feas = feas_cutting_plane(oracle, n, big_r, delta_prime, cfg.engine);

  SeparationVerdict verdict;
  verdict.iterations = feas.stats.iterations;
  verdict.oracle_calls = feas.stats.oracle_calls;
  verdict.iteration_cap = feas.stats.iteration_cap;
  verdict.max_det_ratio = feas.stats.max_det_ratio;

  switch (feas.kind) {
    case FeasResult::Kind::Point: {
      if (!pending || (pending->y - feas.point).norm() > 1e-12) {
        verdict.outcome = SeparationVerdict::Outcome::Unverified;
        verdict.reason = "feasible point returned without a verified certificate";
        break;
      }
      const double ynorm = pending->y.norm();
      RealVector chat = pending->y / ynorm;
      const CoeffVector direction(p.coords.indices, chat);
      const double threshold = pending->threshold_raw / ynorm;
      const double margin = p.coords.values.dot(chat) - threshold;

      const HermitianOp w = devectorize(direction, basis, 0.0);
      const OptResult lo = min_over_products(w, verify_cfg);
      const SpectralDecomp sd = spectral_decomp(w);
      const double lmin = sd.eigenvalues(0);
      const double lmax = sd.eigenvalues(sd.eigenvalues.size() - 1);

      const bool left = lmin < lo.value - kHandednessTol;
      const bool right = lmax > threshold + kHandednessTol;
      Handedness h = Handedness::None;
      if (left && right) h = Handedness::Ambidextrous;
      else if (left) h = Handedness::Left;
      else if (right) h = Handedness::Right;

      Witness tightened{w, lo.value, threshold, h,
                        (!left && std::abs(lo.value - lmin) <= kHandednessTol) ||
                            (!right && std::abs(lmax - threshold) <= kHandednessTol),
                        lo.converged, verify_cfg};

      verdict.outcome = SeparationVerdict::Outcome::Witness;
      verdict.witness = WitnessCertificate{direction, threshold, margin, tightened};
      verdict.boundary = margin < 2.0 * p.delta;
      break;
    }
    case FeasResult::Kind::Empty: {
      verdict.outcome = SeparationVerdict::Outcome::Member;
      verdict.delta_effective = p.delta + p.error_radius;
      verdict.boundary = best_violation >= -2.0 * p.delta;
      break;
    }
    case FeasResult::Kind::Unverified: {
      verdict.outcome = SeparationVerdict::Outcome::Unverified;
      verdict.reason = feas.reason;
      break;
    }
  }

  verdict.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return verdict;
}

nlohmann::json verdict_to_json(const SeparationVerdict& v,
                               const ObservableBasis& basis, bool include_timing) {
  nlohmann::json j;
  j["schema"] = 1;
  switch (v.outcome) {
    case SeparationVerdict::Outcome::Witness:
      j["outcome"] = "witness";
      break;
    case SeparationVerdict::Outcome::Member:
      j["outcome"] = "member";
      break;
    case SeparationVerdict::Outcome::Unverified:
      j["outcome"] = "unverified";
      break;
  }
  if (v.witness) {
    nlohmann::json w;
    w["indices"] = v.witness->direction.indices;
    w["coefficients"] = std::vector<double>(
        v.witness->direction.values.data(),
        v.witness->direction.values.data() + v.witness->direction.values.size());
    std::vector<std::string> labels;
    labels.reserve(v.witness->direction.indices.size());
    for (int idx : v.witness->direction.indices) labels.push_back(basis.label(idx));
    w["labels"] = labels;
    w["threshold"] = v.witness->threshold;
    w["margin"] = v.witness->margin;
    w["operator"] = witness_to_json(v.witness->tightened, basis);
    j["witness"] = w;
  }
  if (v.delta_effective) {
    j["delta_effective"] = *v.delta_effective;
  }
  if (!v.reason.empty()) {
    j["reason"] = v.reason;
  }
  j["boundary"] = v.boundary;
  j["iterations"] = v.iterations;
  j["oracle_calls"] = v.oracle_calls;
  j["wall_time"] = include_timing ? nlohmann::json(v.wall_time_s) : nlohmann::json(nullptr);
  return j;
}

}  // namespace ewsearch
