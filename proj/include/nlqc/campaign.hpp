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
#include <filesystem>
#include <string>
#include <vector>

#include "nlqc/bounds.hpp"

namespace nlqc::campaign {

struct CampaignConfig {
  long samples = 0;
  std::uint64_t seed = 0;
  bool use_bell = true;
  bool use_cc = true;
  int restarts = 8;  // reduced relative to single-gate reports, for throughput
  int bins = 50;
  std::filesystem::path out;  // empty: keep records in memory only
  bool resume = false;
  int threads = 0;  // 0: hardware concurrency
};

struct CampaignRecord {
  long index = 0;
  std::uint64_t substream_seed = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double bound = 0.0;  // (lambda1 - lambda2)/2, unclamped
  std::string reference;
  double wall_ms = 0.0;
};

struct CampaignSummary {
  long samples = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int bins = 0;
  std::vector<long> histogram;  // counts over [0, 0.5]
};

struct CampaignResult {
  std::vector<CampaignRecord> records;  // sorted by sample index
  CampaignSummary summary;
};

/// Counts over `bins` equal cells of [0, 0.5]; cells are half open with the
/// last cell closed, so a bound of exactly 0.5 lands in the final cell.
/// Returned as (lower edge, count) pairs.
std::vector<std::pair<double, long>> histogram(const std::vector<CampaignRecord>& records,
                                               int bins);

/// Runs the Haar sweep: per sample, a substream-seeded controllable
/// correlation bound over the configured references (as-given orientation).
/// Deterministic for a fixed config; samples evaluate concurrently. With an
/// output path, records append to a delimiter-separated file as they
/// complete (flushed in index order), and --resume skips indices already
/// present in the file.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Parses records from a previously written record file.
std::vector<CampaignRecord> read_records(const std::filesystem::path& path);

/// Summary as a structured text object with fields samples, mean, min, max,
/// bins.
std::string summary_to_json(const CampaignSummary& summary);

}  // namespace nlqc::campaign
