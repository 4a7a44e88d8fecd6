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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ewsearch/ingest.hpp"

using namespace ewsearch;
using nlohmann::json;

namespace {

json werner_records(double p) {
  json j;
  j["schema"] = 1;
  j["dims"] = {2, 2};
  j["records"] = json::array();
  j["records"].push_back({{"label", {1, 1}}, {"value", p / 2.0}});
  j["records"].push_back({{"label", {2, 2}}, {"value", -p / 2.0}});
  return j;
}

int thrown_code(const json& j, double delta = 0.01) {
  try {
    ingest_json(j, delta);
  } catch (const IngestError& e) {
    return e.exit_code();
  }
  return -1;
}

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("well-formed input resolves labels in both forms") {
  json j = werner_records(0.6);
  // Mix in a flat label and an error bar.
  j["records"].push_back({{"label", 15}, {"value", 0.25}, {"error", 0.03}});
  j["records"].push_back({{"label", {0, 3}}, {"value", 0.1}, {"error", 0.04}});

  const IngestResult r = ingest_json(j, 0.02);
  CHECK(r.dim_a == 2);
  CHECK(r.dim_b == 2);
  CHECK(r.point.delta == 0.02);
  // Records come back sorted by flat index regardless of input order.
  REQUIRE(r.point.coords.size() == 4);
  CHECK(r.point.coords.indices == std::vector<int>{3, 5, 10, 15});
  CHECK(r.point.coords.values(0) == doctest::Approx(0.1));
  CHECK(r.point.coords.values(1) == doctest::Approx(0.3));
  CHECK(r.point.coords.values(2) == doctest::Approx(-0.3));
  CHECK(r.point.coords.values(3) == doctest::Approx(0.25));
  // Error bars combine as a Euclidean radius.
  CHECK(r.point.error_radius == doctest::Approx(0.05));
}

TEST_CASE("schema version gate") {
  json j = werner_records(0.2);
  CHECK(ingest_json(j, 0.01).dim_a == 2);  // explicit schema 1
  j.erase("schema");
  CHECK(ingest_json(j, 0.01).dim_a == 2);  // schema optional
  j["schema"] = 2;
  CHECK(thrown_code(j) == kExitMalformedInput);
  j["schema"] = "1";
  CHECK(thrown_code(j) == kExitMalformedInput);
}

TEST_CASE("malformed structure is rejected with the malformed-input code") {
  CHECK(thrown_code(json::array()) == kExitMalformedInput);

  json no_dims = werner_records(0.2);
  no_dims.erase("dims");
  CHECK(thrown_code(no_dims) == kExitMalformedInput);

  json bad_dims = werner_records(0.2);
  bad_dims["dims"] = {2};
  CHECK(thrown_code(bad_dims) == kExitMalformedInput);
  bad_dims["dims"] = {1, 2};
  CHECK(thrown_code(bad_dims) == kExitMalformedInput);

  json no_records = werner_records(0.2);
  no_records.erase("records");
  CHECK(thrown_code(no_records) == kExitMalformedInput);

  json no_value = werner_records(0.2);
  no_value["records"][0].erase("value");
  CHECK(thrown_code(no_value) == kExitMalformedInput);

  json bad_error = werner_records(0.2);
  bad_error["records"][0]["error"] = "large";
  CHECK(thrown_code(bad_error) == kExitMalformedInput);
  bad_error["records"][0]["error"] = -0.1;
  CHECK(thrown_code(bad_error) == kExitMalformedInput);
}

TEST_CASE("empty record lists get their own exit code") {
  json j = werner_records(0.2);
  j["records"] = json::array();
  CHECK(thrown_code(j) == kExitEmptyRecords);
}

TEST_CASE("unknown labels get their own exit code") {
  json flat_out = werner_records(0.2);
  flat_out["records"][0]["label"] = 16;
  CHECK(thrown_code(flat_out) == kExitUnknownLabel);

  json pair_out = werner_records(0.2);
  pair_out["records"][0]["label"] = {4, 0};
  CHECK(thrown_code(pair_out) == kExitUnknownLabel);

  json text = werner_records(0.2);
  text["records"][0]["label"] = "s1*s1";
  CHECK(thrown_code(text) == kExitUnknownLabel);

  // The identity component is fixed by normalization, not measurable data.
  json identity = werner_records(0.2);
  identity["records"][0]["label"] = 0;
  CHECK(thrown_code(identity) == kExitUnknownLabel);
  identity["records"][0]["label"] = {0, 0};
  CHECK(thrown_code(identity) == kExitUnknownLabel);
}

TEST_CASE("duplicate labels are rejected across both label forms") {
  json j = werner_records(0.2);
  j["records"].push_back({{"label", 5}, {"value", 0.1}});
  CHECK(thrown_code(j) == kExitDuplicateLabel);
}

TEST_CASE("expectation bounds respect the error bar") {
  json hot = werner_records(0.2);
  hot["records"][0]["value"] = 1.2;
  CHECK(thrown_code(hot) == kExitBoundViolation);

  hot["records"][0]["error"] = 0.25;  // 1.2 <= 1 + 0.25
  CHECK(ingest_json(hot, 0.01).point.coords.values.maxCoeff() ==
        doctest::Approx(1.2));
}

TEST_CASE("file ingestion reports unreadable or unparsable files") {
  CHECK_THROWS_AS(ingest("/nonexistent/path.json", 0.01), IngestError);
  try {
    ingest("/nonexistent/path.json", 0.01);
  } catch (const IngestError& e) {
    CHECK(e.exit_code() == kExitMalformedInput);
  }

  const std::string path = "/tmp/ewsearch_ingest_garbage.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  try {
    ingest(path, 0.01);
    CHECK(false);
  } catch (const IngestError& e) {
    CHECK(e.exit_code() == kExitMalformedInput);
  }

  {
    std::ofstream out(path);
    out << werner_records(0.6).dump();
  }
  const IngestResult r = ingest(path, 0.01);
  CHECK(r.point.coords.indices == std::vector<int>{5, 10});
  std::remove(path.c_str());
}

TEST_CASE("seed count honors the environment override") {
  unsetenv("WSEP_SEEDS");
  CHECK(default_run_config().seeds == 50);
  setenv("WSEP_SEEDS", "7", 1);
  CHECK(default_run_config().seeds == 7);
  setenv("WSEP_SEEDS", "0", 1);
  CHECK(default_run_config().seeds == 50);
  setenv("WSEP_SEEDS", "many", 1);
  CHECK(default_run_config().seeds == 50);
  unsetenv("WSEP_SEEDS");
}

TEST_CASE("solver configuration mirrors the run configuration") {
  RunConfig cfg;
  cfg.seeds = 12;
  cfg.seesaw_iters = 77;
  cfg.seesaw_tol = 1e-8;
  cfg.oracle_starts = 9;
  cfg.seed = 42;
  cfg.engine = SolverEngine::Accp;
  const SolverConfig s = solver_config(cfg);
  CHECK(s.opt.starts == 12);
  CHECK(s.opt.max_iters == 77);
  CHECK(s.opt.tol == 1e-8);
  CHECK(s.opt.seed == 42);
  CHECK(s.oracle_starts == 9);
  CHECK(s.engine == SolverEngine::Accp);
}

TEST_CASE("run_wsep end to end on entangled data") {
  const IngestResult in = ingest_json(werner_records(0.6), 0.01);
  RunConfig cfg;
  cfg.dim_a = in.dim_a;
  cfg.dim_b = in.dim_b;

  std::ostringstream text;
  CHECK(run_wsep(cfg, in, text) == kExitWitness);
  CHECK(text.str().find("witness") != std::string::npos);
  CHECK(text.str().find("detection margin") != std::string::npos);

  cfg.json_output = true;
  std::ostringstream js;
  CHECK(run_wsep(cfg, in, js) == kExitWitness);
  const json verdict = json::parse(js.str());
  CHECK(verdict["outcome"] == "witness");
  CHECK(verdict["wall_time"].is_null());
  CHECK(verdict["witness"]["margin"].get<double>() > 0.0);
}

TEST_CASE("run_wsep end to end on separable data") {
  const IngestResult in = ingest_json(werner_records(0.3), 0.01);
  RunConfig cfg;
  cfg.json_output = true;
  std::ostringstream out;
  CHECK(run_wsep(cfg, in, out) == kExitMember);
  const json verdict = json::parse(out.str());
  CHECK(verdict["outcome"] == "member");
  CHECK(verdict["delta_effective"].get<double>() == doctest::Approx(0.01));
}

TEST_CASE("run_wsep output is byte deterministic") {
  const IngestResult in = ingest_json(werner_records(0.6), 0.01);
  RunConfig cfg;
  cfg.json_output = true;
  std::ostringstream a, b;
  run_wsep(cfg, in, a);
  run_wsep(cfg, in, b);
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());
}

TEST_CASE("demo dispatch and the bell-sandwich scenario") {
  RunConfig cfg;
  cfg.json_output = true;

  std::ostringstream bad;
  CHECK(demo("no-such-demo", cfg, bad) == kExitUsage);
  CHECK(bad.str().find("unknown demo") != std::string::npos);

  std::ostringstream out;
  REQUIRE(demo("bell-sandwich", cfg, out) == 0);
  const json j = json::parse(out.str());
  CHECK(j["demo"] == "bell-sandwich");
  CHECK(j["even_parity_witness"]["handedness"] == "ambidextrous");
  CHECK(j["even_parity_witness"]["a_star"].get<double>() ==
        doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(j["odd_parity_witness"]["b_star"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-8));
  REQUIRE(j["table"].size() == 4);
  for (const auto& row : j["table"]) {
    CHECK(row["entangled"] == true);
    // Each maximally entangled state implicates itself.
    CHECK(row["implicated"] == row["state"]);
  }
}

TEST_CASE("werner sweep finds the expected detection onsets") {
  RunConfig cfg;
  cfg.json_output = true;
  std::ostringstream out;
  REQUIRE(demo("werner-sweep", cfg, out) == 0);
  const json j = json::parse(out.str());
  REQUIRE(j["rows"].size() == 11);
  // On a 0.1 grid the full-span search flips right above the exact 1/3
  // threshold; the two-observable search needs twice the visibility.
  CHECK(j["full_onset"].get<double>() == doctest::Approx(0.4));
  CHECK(j["partial_onset"].get<double>() == doctest::Approx(0.6));
  CHECK(j["rows"][0]["full"] == "member");
  CHECK(j["rows"][10]["full"] == "witness");
  CHECK(j["rows"][10]["partial"] == "witness");
}

TEST_CASE("tiles demo reports detection beyond the partial transpose") {
  RunConfig cfg;
  cfg.json_output = true;
  std::ostringstream out;
  REQUIRE(demo("tiles-upb", cfg, out) == 0);
  const json j = json::parse(out.str());
  CHECK(j["detects"] == true);
  CHECK(j["ppt_passes"] == true);
  CHECK(j["value_on_complement_state"].get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(j["witness"]["a_star"].get<double>() ==
        doctest::Approx(-0.9715837867).epsilon(1e-6));
}

TEST_SUITE_END();
