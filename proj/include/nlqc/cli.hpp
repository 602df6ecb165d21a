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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "nlqc/bounds.hpp"
#include "nlqc/campaign.hpp"

namespace nlqc::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidMatrix = 3;
inline constexpr int kExitInapplicable = 4;

/// Seed used when --seed is absent: NLQC_SEED from the environment, else
/// 12345.
std::uint64_t default_seed();

struct GateOptions {
  std::string gate;       // catalog name; exclusive with `file`
  std::string file;       // matrix file path
  std::string technique = "both";  // cc | ce | both
  std::string reference = "both";  // bell | cc | both | path to a density file
  std::optional<double> eps;       // diamond-norm noise for the cc bound
  std::optional<double> gamma;     // diamond-norm noise for the ce bound
  std::string format = "human";    // human | structured
  std::uint64_t seed = 0;
  int restarts = 32;
};

struct TableOptions {
  std::string technique = "both";
  std::string format = "human";
  std::uint64_t seed = 0;
  int restarts = 32;
  int threads = 0;
};

struct CampaignOptions {
  long samples = 10000;
  std::uint64_t seed = 0;
  int bins = 50;
  int restarts = 8;
  std::string out;
  bool resume = false;
  std::string reference = "both";
  std::string format = "human";
  int threads = 0;
};

struct RepeatOptions {
  std::string gate;
  std::string file;
  std::string technique = "ce";  // cc | ce
  int n = 1;
  std::optional<double> eps;  // noisy-unitary repetition bound for cc
  std::uint64_t seed = 0;
  int restarts = 32;
};

int cmd_gate(const GateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_table(const TableOptions& opts, std::ostream& out, std::ostream& err);
int cmd_campaign(const CampaignOptions& opts, std::ostream& out, std::ostream& err);
int cmd_repeat(const RepeatOptions& opts, std::ostream& out, std::ostream& err);

/// Full argv dispatch; returns the process exit code.
int run(int argc, const char* const* argv);

/// Display name for a reference tag ("cc" -> rho_cc, "bell" -> Psi+, ...).
std::string reference_display(const std::string& tag);

}  // namespace nlqc::cli
