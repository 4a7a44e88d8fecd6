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
#include "ewsearch/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace ewsearch {

RunConfig default_run_config() {
  RunConfig cfg;
  if (const char* env = std::getenv("WSEP_SEEDS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      cfg.seeds = static_cast<int>(v);
    }
  }
  return cfg;
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig out;
  out.opt.starts = cfg.seeds;
  out.opt.max_iters = cfg.seesaw_iters;
  out.opt.tol = cfg.seesaw_tol;
  out.opt.seed = cfg.seed;
  out.oracle_starts = cfg.oracle_starts;
  out.engine = cfg.engine;
  return out;
}

namespace {

int resolve_label(const nlohmann::json& label, int dim_a, int dim_b) {
  const int na = dim_a * dim_a;
  const int nb = dim_b * dim_b;
  int flat = -1;
  if (label.is_array() && label.size() == 2 && label[0].is_number_integer() &&
      label[1].is_number_integer()) {
    const int ia = label[0].get<int>();
    const int ib = label[1].get<int>();
    if (ia < 0 || ia >= na || ib < 0 || ib >= nb) {
      throw IngestError(kExitUnknownLabel,
                        "label [" + std::to_string(ia) + ", " + std::to_string(ib) +
                            "] is outside the basis for these dims");
    }
    flat = ia * nb + ib;
  } else if (label.is_number_integer()) {
    flat = label.get<int>();
    if (flat < 0 || flat >= na * nb) {
      throw IngestError(kExitUnknownLabel,
                        "flat label " + std::to_string(flat) + " is outside the basis");
    }
  } else {
    throw IngestError(kExitUnknownLabel,
                      "label must be a flat index or a pair of factor indices");
  }
  if (flat == 0) {
    throw IngestError(kExitUnknownLabel,
                      "the identity component is fixed by normalization and cannot "
                      "be supplied as a record");
  }
  return flat;
}

}  // namespace

IngestResult ingest_json(const nlohmann::json& j, double delta) {
  if (!j.is_object()) {
    throw IngestError(kExitMalformedInput, "top-level JSON value must be an object");
  }
  if (j.contains("schema") &&
      !(j["schema"].is_number_integer() && j["schema"].get<int>() == 1)) {
    throw IngestError(kExitMalformedInput, "unsupported schema version");
  }
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2 ||
      !j["dims"][0].is_number_integer() || !j["dims"][1].is_number_integer()) {
    throw IngestError(kExitMalformedInput, "dims must be an array [M, N]");
  }
  const int dim_a = j["dims"][0].get<int>();
  const int dim_b = j["dims"][1].get<int>();
  if (dim_a < 2 || dim_b < 2) {
    throw IngestError(kExitMalformedInput, "dims must both be >= 2");
  }
  if (!j.contains("records") || !j["records"].is_array()) {
    throw IngestError(kExitMalformedInput, "records must be an array");
  }
  if (j["records"].empty()) {
    throw IngestError(kExitEmptyRecords, "records must be nonempty");
  }

  std::map<int, ExpectationRecord> by_index;
  for (const nlohmann::json& rec : j["records"]) {
    if (!rec.is_object() || !rec.contains("label") || !rec.contains("value") ||
        !rec["value"].is_number()) {
      throw IngestError(kExitMalformedInput,
                        "each record needs a label and a numeric value");
    }
    double error = 0.0;
    if (rec.contains("error")) {
      if (!rec["error"].is_number()) {
        throw IngestError(kExitMalformedInput, "error bar must be a number");
      }
      error = rec["error"].get<double>();
      if (error < 0.0) {
        throw IngestError(kExitMalformedInput, "error bar must be non-negative");
      }
    }
    const int index = resolve_label(rec["label"], dim_a, dim_b);
    const double value = rec["value"].get<double>();
    if (std::abs(value) > 1.0 + error) {
      std::ostringstream msg;
      msg << "record for index " << index << " has |value| " << std::abs(value)
          << " above the bound 1 + error";
      throw IngestError(kExitBoundViolation, msg.str());
    }
    if (!by_index.emplace(index, ExpectationRecord{index, value, error}).second) {
      throw IngestError(kExitDuplicateLabel,
                        "duplicate label for index " + std::to_string(index));
    }
  }

  std::vector<int> indices;
  RealVector values(static_cast<Eigen::Index>(by_index.size()));
  double err2 = 0.0;
  int k = 0;
  for (const auto& [index, rec] : by_index) {
    indices.push_back(index);
    values(k++) = rec.value;
    err2 += rec.error_bar * rec.error_bar;
  }

  IngestResult out{dim_a, dim_b,
                   TargetPoint{CoeffVector(std::move(indices), std::move(values)),
                               delta, std::sqrt(err2)}};
  return out;
}

IngestResult ingest(const std::string& path, double delta) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError(kExitMalformedInput, "cannot open input file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(kExitMalformedInput, std::string("JSON parse error: ") + e.what());
  }
  return ingest_json(j, delta);
}

namespace {

void print_witness_combination(const WitnessCertificate& cert,
                               const ObservableBasis& basis, std::ostream& out) {
  out << "witness direction:";
  bool first = true;
  for (int k = 0; k < cert.direction.size(); ++k) {
    const double v = cert.direction.values(k);
    if (std::abs(v) < 1e-12) continue;
    if (first) {
      out << " " << v;
      first = false;
    } else {
      out << (v >= 0.0 ? " + " : " - ") << std::abs(v);
    }
    out << "*" << basis.label(cert.direction.indices[k]);
  }
  if (first) out << " 0";
  out << "\n";
}

int verdict_exit_code(const SeparationVerdict& v) {
  switch (v.outcome) {
    case SeparationVerdict::Outcome::Witness:
      return kExitWitness;
    case SeparationVerdict::Outcome::Member:
      return kExitMember;
    default:
      return kExitUnverified;
  }
}

}  // namespace

int run_wsep(const RunConfig& cfg, const IngestResult& in, std::ostream& out) {
  const ObservableBasis basis = build_basis(in.dim_a, in.dim_b);
  const SeparationVerdict verdict = wsep(in.point, basis, solver_config(cfg));

  if (cfg.json_output) {
    out << verdict_to_json(verdict, basis, false).dump(2) << "\n";
    return verdict_exit_code(verdict);
  }

  out << std::setprecision(10);
  switch (verdict.outcome) {
    case SeparationVerdict::Outcome::Witness: {
      out << "outcome: witness found in the span of the measured observables\n";
      print_witness_combination(*verdict.witness, basis, out);
      out << "separable threshold (b*): " << verdict.witness->threshold << "\n";
      out << "measured value along direction: "
          << verdict.witness->threshold + verdict.witness->margin << "\n";
      out << "detection margin: " << verdict.witness->margin << "\n";
      out << "witness handedness: "
          << handedness_name(verdict.witness->tightened.handedness) << "\n";
      break;
    }
    case SeparationVerdict::Outcome::Member: {
      out << "outcome: no witness in the measured span; the data is consistent "
             "with a separable state\n";
      out << "membership tolerance (delta + measurement error): "
          << *verdict.delta_effective << "\n";
      break;
    }
    case SeparationVerdict::Outcome::Unverified: {
      out << "outcome: unverified (" << verdict.reason << ")\n";
      break;
    }
  }
  if (verdict.boundary) {
    out << "note: verdict lies within 2*delta of the boundary\n";
  }
  out << "iterations: " << verdict.iterations
      << ", oracle calls: " << verdict.oracle_calls << "\n";
  out << "wall time: " << verdict.wall_time_s << " s\n";
  return verdict_exit_code(verdict);
}

namespace {

int demo_bell_sandwich(const RunConfig& cfg, std::ostream& out) {
  const ObservableBasis basis = build_basis(2, 2);
  const SolverConfig scfg = solver_config(cfg);

  const int i11 = basis.flat_index(1, 1);
  const int i22 = basis.flat_index(2, 2);

  auto make = [&](double c11, double c22) {
    return devectorize(CoeffVector({i11, i22}, (RealVector(2) << c11, c22).finished()),
                       basis, 0.0);
  };
  const HermitianOp a_even = make(1.0, -1.0);
  const HermitianOp a_odd = make(1.0, 1.0);

  const Witness w_even = classify(a_even, scfg.opt);
  const Witness w_odd = classify(a_odd, scfg.opt);

  const HermitianOp op11 = basis.element(i11);
  const HermitianOp op22 = basis.element(i22);
  const BellState all[] = {BellState::PsiPlus, BellState::PsiMinus,
                           BellState::PhiPlus, BellState::PhiMinus};
  const char* names[] = {"psi+", "psi-", "phi+", "phi-"};

  nlohmann::json table = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    const DensityMatrix rho = bell_state(all[i]);
    const double e11 = expectation(op11, rho);
    const double e22 = expectation(op22, rho);
    const BellCheck check = bell_inequality_check(e11, e22);
    nlohmann::json row;
    row["state"] = names[i];
    row["e11"] = e11;
    row["e22"] = e22;
    row["entangled"] = check.entangled;
    row["implicated"] =
        check.implicated ? nlohmann::json(names[static_cast<int>(*check.implicated)])
                         : nlohmann::json(nullptr);
    table.push_back(row);
  }

  if (cfg.json_output) {
    nlohmann::json j;
    j["schema"] = 1;
    j["demo"] = "bell-sandwich";
    j["even_parity_witness"] = witness_to_json(w_even, basis);
    j["odd_parity_witness"] = witness_to_json(w_odd, basis);
    j["table"] = table;
    out << j.dump(2) << "\n";
    return 0;
  }

  out << std::setprecision(10);
  out << "operator s1*s1 - s2*s2 (detects the even-parity pair):\n";
  out << "  a* = " << *w_even.a_star << ", b* = " << *w_even.b_star
      << ", handedness = " << handedness_name(w_even.handedness) << "\n";
  out << "operator s1*s1 + s2*s2 (detects the odd-parity pair):\n";
  out << "  a* = " << *w_odd.a_star << ", b* = " << *w_odd.b_star
      << ", handedness = " << handedness_name(w_odd.handedness) << "\n";
  out << "four-inequality table (entangled when |e11+e22| or |e11-e22| > 1/2):\n";
  for (const auto& row : table) {
    out << "  " << row["state"].get<std::string>() << ": e11 = "
        << row["e11"].get<double>() << ", e22 = " << row["e22"].get<double>()
        << ", implicated = "
        << (row["implicated"].is_null() ? std::string("none")
                                        : row["implicated"].get<std::string>())
        << "\n";
  }
  return 0;
}

int demo_werner_sweep(const RunConfig& cfg, std::ostream& out) {
  const ObservableBasis basis = build_basis(2, 2);
  const SolverConfig scfg = solver_config(cfg);
  const int i11 = basis.flat_index(1, 1);
  const int i22 = basis.flat_index(2, 2);

  nlohmann::json rows = nlohmann::json::array();
  double full_onset = -1.0;
  double partial_onset = -1.0;

  for (int k = 0; k <= 10; ++k) {
    const double p = 0.1 * k;
    const DensityMatrix rho = werner(p);

    const CoeffVector full = vectorize(rho.op(), basis);
    const SeparationVerdict vf =
        wsep(TargetPoint{full, cfg.delta, 0.0}, basis, scfg);

    const double e11 = expectation(basis.element(i11), rho);
    const double e22 = expectation(basis.element(i22), rho);
    const CoeffVector partial({i11, i22}, (RealVector(2) << e11, e22).finished());
    const SeparationVerdict vp =
        wsep(TargetPoint{partial, cfg.delta, 0.0}, basis, scfg);

    auto name = [](const SeparationVerdict& v) {
      switch (v.outcome) {
        case SeparationVerdict::Outcome::Witness:
          return "witness";
        case SeparationVerdict::Outcome::Member:
          return "member";
        default:
          return "unverified";
      }
    };
    if (full_onset < 0.0 && vf.outcome == SeparationVerdict::Outcome::Witness) {
      full_onset = p;
    }
    if (partial_onset < 0.0 && vp.outcome == SeparationVerdict::Outcome::Witness) {
      partial_onset = p;
    }

    nlohmann::json row;
    row["p"] = p;
    row["full"] = name(vf);
    row["partial"] = name(vp);
    rows.push_back(row);
    if (!cfg.json_output) {
      out << "p = " << std::setprecision(2) << p
          << ": full tomography -> " << name(vf)
          << ", two observables -> " << name(vp) << "\n";
    }
  }

  if (cfg.json_output) {
    nlohmann::json j;
    j["schema"] = 1;
    j["demo"] = "werner-sweep";
    j["rows"] = rows;
    j["full_onset"] = full_onset;
    j["partial_onset"] = partial_onset;
    out << j.dump(2) << "\n";
  } else {
    out << "first detection with full tomography at p = " << full_onset << "\n";
    out << "first detection with two observables at p = " << partial_onset << "\n";
  }
  return 0;
}

int demo_tiles_upb(const RunConfig& cfg, std::ostream& out) {
  const SolverConfig scfg = solver_config(cfg);
  const std::vector<ProductState> tiles = tiles_upb();

  UpbSplit split;
  const int complement_size = 9 - static_cast<int>(tiles.size());
  for (int i = 0; i < complement_size; ++i) split.left.push_back(i);
  const Witness w = witness_from_upb(tiles, split, scfg.opt);

  Matrix pb = Matrix::Zero(9, 9);
  for (const ProductState& s : tiles) {
    const Vector v = s.joint();
    pb += v * v.adjoint();
  }
  const DensityMatrix rho_be(
      HermitianOp(3, 3, (Matrix::Identity(9, 9) - pb) / 4.0));

  const double value = expectation(w.op, rho_be);
  const PptResult ppt = ppt_check(rho_be);
  const DetectVerdict det = detect(value, w);

  if (cfg.json_output) {
    nlohmann::json j;
    j["schema"] = 1;
    j["demo"] = "tiles-upb";
    j["witness"] = witness_to_json(w, build_basis(3, 3));
    j["value_on_complement_state"] = value;
    j["detects"] = det == DetectVerdict::EntangledLeft;
    j["ppt_passes"] = ppt.is_ppt;
    j["ppt_min_eig"] = ppt.min_eig;
    out << j.dump(2) << "\n";
    return 0;
  }

  out << std::setprecision(10);
  out << "tiles basis: 5 orthonormal product states in 3x3; the complement "
         "span holds no product state\n";
  out << "witness = -(projector onto complement), a* = " << *w.a_star << "\n";
  out << "complement-supported state scores " << value << " < a*\n";
  out << "witness verdict: "
      << (det == DetectVerdict::EntangledLeft ? "entangled (left)" : "inconclusive")
      << "\n";
  out << "partial transpose minimum eigenvalue: " << ppt.min_eig
      << " -> PPT test " << (ppt.is_ppt ? "passes" : "fails")
      << " (inconclusive beyond total dimension 6)\n";
  if (det == DetectVerdict::EntangledLeft && ppt.is_ppt) {
    out << "witness detects; PPT passes\n";
  }
  return 0;
}

}  // namespace

int demo(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  if (name == "bell-sandwich") return demo_bell_sandwich(cfg, out);
  if (name == "werner-sweep") return demo_werner_sweep(cfg, out);
  if (name == "tiles-upb") return demo_tiles_upb(cfg, out);
  out << "unknown demo: " << name
      << " (available: bell-sandwich, werner-sweep, tiles-upb)\n";
  return kExitUsage;
}

}  // namespace ewsearch
