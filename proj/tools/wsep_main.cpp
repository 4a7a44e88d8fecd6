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
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ewsearch/ingest.hpp"

int main(int argc, char** argv) {
  using namespace ewsearch;

  CLI::App app{
      "wsep: decide whether an entanglement witness exists in the span of "
      "measured observables, or assert membership in the separable set"};

  RunConfig cfg = default_run_config();
  std::string input;
  std::string engine = "ellipsoid";

  app.add_option("--input", input, "JSON file with dims and expectation records");
  app.add_option("--delta", cfg.delta, "membership tolerance delta")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seeds", cfg.seeds,
                 "multistart count for verification-grade optimization "
                 "(default from WSEP_SEEDS when set)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--oracle-seeds", cfg.oracle_starts,
                 "multistart count for oracle calls inside the cutting-plane loop")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seesaw-tol", cfg.seesaw_tol, "seesaw convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seesaw-iters", cfg.seesaw_iters, "seesaw iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--engine", engine, "cutting-plane engine: ellipsoid or accp")
      ->check(CLI::IsMember({"ellipsoid", "accp"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random number generator seed")
      ->capture_default_str();
  app.add_flag("--json", cfg.json_output, "emit a machine-readable JSON verdict");

  auto* demo_cmd =
      app.add_subcommand("demo", "run a named end-to-end scenario");
  std::string demo_name;
  demo_cmd->add_option("name", demo_name, "bell-sandwich, werner-sweep, or tiles-upb")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cfg.engine = engine == "accp" ? SolverEngine::Accp : SolverEngine::Ellipsoid;

  try {
    if (demo_cmd->parsed()) {
      return demo(demo_name, cfg, std::cout);
    }
    if (input.empty()) {
      std::cerr << "error: --input FILE is required (or use the demo subcommand)\n";
      return kExitUsage;
    }
    const IngestResult in = ingest(input, cfg.delta);
    cfg.dim_a = in.dim_a;
    cfg.dim_b = in.dim_b;
    return run_wsep(cfg, in, std::cout);
  } catch (const IngestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
