// Copyright 2026 the nlqc-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nlqc/gates.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + std::string(NLQC_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) {
    result.output += buf.data();
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("gate command reproduces the CNOT row") {
  const RunResult r = run_cli("gate CNOT --technique both --restarts 12 --format structured");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc["gate"] == "CNOT");
  REQUIRE(doc["reports"].size() == 2);
  const auto& cc = doc["reports"][0];
  const auto& ce = doc["reports"][1];
  CHECK(cc["technique"] == "cc");
  CHECK(std::abs(cc["bound"].get<double>() - 0.5) < 0.02);
  CHECK(ce["technique"] == "ce");
  CHECK(std::abs(ce["bound"].get<double>() - 1.0) < 1e-3);
}

TEST_CASE("structured output round-trips to 17 significant digits") {
  const RunResult r = run_cli("gate CNOT --technique cc --restarts 8 --format structured");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  const std::string rendered = doc.dump(2);
  const nlohmann::json reparsed = nlohmann::json::parse(rendered);
  for (const char* field : {"lambda1", "lambda2", "bound"}) {
    char a[64], b[64];
    std::snprintf(a, sizeof(a), "%.17g", doc["reports"][0][field].get<double>());
    std::snprintf(b, sizeof(b), "%.17g", reparsed["reports"][0][field].get<double>());
    CHECK(std::string(a) == std::string(b));
  }
}

TEST_CASE("gate command flags gates without controllable correlation") {
  const RunResult r = run_cli("gate SWAP --technique cc --restarts 8");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("not controllably correlated") != std::string::npos);
  CHECK(r.output.find("bound:       0.000") != std::string::npos);
}

TEST_CASE("exit codes are stable") {
  CHECK(run_cli("gate Nonexistent").exit_code == 2);
  CHECK(run_cli("gate").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("campaign --samples 0").exit_code == 2);
  CHECK(run_cli("gate CNOT --eps 0.3 --technique cc --restarts 8").exit_code == 2);

  // Feeding a density matrix where a unitary is required: exit 3 with the
  // residual in the message.
  const auto density = temp_file("nlqc_cli_density.json");
  {
    std::ofstream out(density);
    out << nlqc::gates::matrix_to_json(nlqc::gates::bell_state().mat);
  }
  const RunResult bad = run_cli("gate --file " + density.string());
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("not unitary") != std::string::npos);
  std::filesystem::remove(density);

  // Providing both a name and a file is a usage error.
  const RunResult both = run_cli("gate CNOT --file somefile.json");
  CHECK(both.exit_code == 2);
}

TEST_CASE("custom reference state from a density file") {
  const auto path = temp_file("nlqc_cli_ref.json");
  {
    std::ofstream out(path);
    out << nlqc::gates::matrix_to_json(nlqc::gates::bell_state().mat);
  }
  const RunResult r = run_cli("gate CNOT --technique cc --reference " + path.string() +
                              " --restarts 8 --format structured");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(doc["reports"][0]["reference"] == "custom");
  CHECK(std::abs(doc["reports"][0]["bound"].get<double>() - 0.5) < 0.02);
  std::filesystem::remove(path);

  // A reference file that is not a valid state is an invalid-matrix error.
  const auto bad = temp_file("nlqc_cli_bad_ref.json");
  {
    std::ofstream out(bad);
    out << nlqc::gates::matrix_to_json(nlqc::gates::catalog_lookup("CNOT").matrix);
  }
  CHECK(run_cli("gate CNOT --reference " + bad.string()).exit_code == 3);
  std::filesystem::remove(bad);
}

TEST_CASE("gate from file matches the catalog gate") {
  const auto path = temp_file("nlqc_cli_cnot.json");
  {
    std::ofstream out(path);
    out << nlqc::gates::matrix_to_json(nlqc::gates::catalog_lookup("CNOT").matrix);
  }
  const RunResult r =
      run_cli("gate --file " + path.string() + " --technique cc --restarts 8 --format structured");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(std::abs(doc["reports"][0]["bound"].get<double>() - 0.5) < 0.02);
  std::filesystem::remove(path);
}

TEST_CASE("repeat command") {
  const RunResult ce = run_cli("repeat CNOT --technique ce -n 5 --restarts 12");
  REQUIRE(ce.exit_code == 0);
  CHECK(ce.output.find("repeated bound: 5.000") != std::string::npos);

  const RunResult cc = run_cli("repeat CNOT --technique cc -n 2 --restarts 12");
  REQUIRE(cc.exit_code == 0);
  CHECK(cc.output.find("repeated bound: 1.000") != std::string::npos);

  // Noisy-unitary repetition line with --eps.
  const RunResult noisy = run_cli("repeat CNOT --technique cc -n 2 --eps 0.001 --restarts 8");
  REQUIRE(noisy.exit_code == 0);
  CHECK(noisy.output.find("noisy repeated bound") != std::string::npos);

  // CS has lambda2 far above the repetition tolerance: refused with exit 4.
  const RunResult refused = run_cli("repeat CS --technique ce -n 2 --restarts 8");
  CHECK(refused.exit_code == 4);
  CHECK(refused.output.find("lambda2") != std::string::npos);

  CHECK(run_cli("repeat CNOT --technique ce -n 0").exit_code == 2);
}

TEST_CASE("campaign command is deterministic and resumable") {
  const auto out_a = temp_file("nlqc_cli_campaign_a.csv");
  const auto out_b = temp_file("nlqc_cli_campaign_b.csv");
  const std::string base =
      "campaign --samples 10 --seed 7 --restarts 4 --bins 10 --format structured --out ";

  const RunResult a = run_cli(base + out_a.string());
  REQUIRE(a.exit_code == 0);
  const RunResult b = run_cli(base + out_b.string());
  REQUIRE(b.exit_code == 0);

  std::ifstream fa(out_a), fb(out_b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());

  const nlohmann::json summary = nlohmann::json::parse(a.output);
  CHECK(summary["samples"] == 10);
  CHECK(summary.contains("mean"));
  CHECK(summary.contains("bins"));

  // Resume on a complete file recomputes nothing and keeps the records.
  const RunResult resumed = run_cli(base + out_a.string() + " --resume");
  CHECK(resumed.exit_code == 0);
  std::ifstream fa2(out_a);
  std::stringstream sa2;
  sa2 << fa2.rdbuf();
  CHECK(sa2.str() == sa.str());

  std::filesystem::remove(out_a);
  std::filesystem::remove(out_b);
}

TEST_CASE("NLQC_SEED environment variable sets the default seed") {
  const std::string args = "gate CNOT --technique cc --restarts 8 --format structured";
  const RunResult env_run = run_cli(args, "NLQC_SEED=777 ");
  const RunResult flag_run = run_cli(args + " --seed 777");
  REQUIRE(env_run.exit_code == 0);
  REQUIRE(flag_run.exit_code == 0);
  CHECK(env_run.output == flag_run.output);
}

TEST_CASE("table command renders rows for every catalog gate") {
  // Restarts kept small: this exercises wiring, not reproduction quality.
  const RunResult r = run_cli("table --technique cc --restarts 6 --format structured --seed 3");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.output);
  REQUIRE(doc["rows"].size() == nlqc::gates::table_gate_names().size());
  for (const auto& row : doc["rows"]) {
    CHECK(row.contains("gate"));
    CHECK(row["cc"].contains("bound"));
  }

  const RunResult human = run_cli("table --technique cc --restarts 6 --seed 3");
  REQUIRE(human.exit_code == 0);
  CHECK(human.output.find("CNOT") != std::string::npos);
  CHECK(human.output.find("Ref. state") != std::string::npos);
}
