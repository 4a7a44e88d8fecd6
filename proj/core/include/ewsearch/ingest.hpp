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

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "ewsearch/separation.hpp"

namespace ewsearch {

/// One measured expectation: a resolved flat basis index, the value, and a
/// non-negative error half-width.
struct ExpectationRecord {
  int index;
  double value;
  double error_bar;
};

/// Exit codes shared by the library entry points and the command line.
/// 0..2 are answers; anything above is an input or usage failure.
enum ExitCode : int {
  kExitWitness = 0,
  kExitMember = 1,
  kExitUnverified = 2,
  kExitUsage = 3,
  kExitMalformedInput = 4,
  kExitUnknownLabel = 5,
  kExitDuplicateLabel = 6,
  kExitBoundViolation = 7,
  kExitEmptyRecords = 8,
};

class IngestError : public std::runtime_error {
 public:
  IngestError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Everything configurable about a run; every field is mirrored by a CLI
/// flag. dims are filled from the input file during ingestion.
struct RunConfig {
  int dim_a = 0;
  int dim_b = 0;
  double delta = 0.01;
  int seeds = 50;
  double seesaw_tol = 1e-10;
  int seesaw_iters = 500;
  int oracle_starts = 16;
  SolverEngine engine = SolverEngine::Ellipsoid;
  std::uint64_t seed = 0;
  bool json_output = false;
};

/// RunConfig with the seed count taken from the WSEP_SEEDS environment
/// variable when it is set to a positive integer.
RunConfig default_run_config();

SolverConfig solver_config(const RunConfig& cfg);

/// Parsed input: dimensions plus the target point in coefficient space.
struct IngestResult {
  int dim_a;
  int dim_b;
  TargetPoint point;
};

/// Input schema: {"schema": 1, "dims": [M, N],
/// "records": [{"label": [i, j] or flat index, "value": v, "error": e}]}.
/// Labels are factor-generator indices into the product basis; the overall
/// identity (flat index 0) is fixed by normalization and not accepted.
/// error_radius of the result is the Euclidean norm of the error bars.
IngestResult ingest_json(const nlohmann::json& j, double delta);

/// Reads and parses the file; throws IngestError with the appropriate exit
/// code on malformed input.
IngestResult ingest(const std::string& path, double delta);

/// Runs the witness search on ingested data and writes the verdict (JSON or
/// human-readable per cfg) to out. Returns the verdict exit code.
int run_wsep(const RunConfig& cfg, const IngestResult& in, std::ostream& out);

/// Named end-to-end scenarios: "bell-sandwich", "werner-sweep", "tiles-upb".
/// Returns an exit code (kExitUsage for an unknown name).
int demo(const std::string& name, const RunConfig& cfg, std::ostream& out);

}  // namespace ewsearch
