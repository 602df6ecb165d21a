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

#include "nlqc/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace nlqc::campaign {

namespace {

constexpr const char* kHeader = "sample_index,substream_seed,reference,lambda1,lambda2,bound";
constexpr int kFlushCadence = 500;  // checkpoint every 500 samples

std::string format_record(const CampaignRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%ld,%016" PRIx64 ",%s,%.17g,%.17g,%.17g", r.index,
                r.substream_seed, r.reference.c_str(), r.lambda1, r.lambda2, r.bound);
  return buf;
}

CampaignRecord evaluate_sample(long index, const CampaignConfig& cfg,
                               const std::vector<bounds::ReferenceChoice>& refs) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(index));
  const gates::Gate u = gates::haar_random(rng);

  const bounds::BoundReport report =
      bounds::cc_bound(u, refs, /*try_both_orientations=*/false, rng, cfg.restarts);

  CampaignRecord record;
  record.index = index;
  record.substream_seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(index));
  record.lambda1 = report.lambda1;
  record.lambda2 = report.lambda2;
  record.bound = 0.5 * (report.lambda1 - report.lambda2);
  record.reference = report.reference;
  record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return record;
}

CampaignSummary summarize(const std::vector<CampaignRecord>& records, int bins) {
  CampaignSummary s;
  s.samples = static_cast<long>(records.size());
  s.bins = bins;
  if (records.empty()) return s;
  double sum = 0.0;
  s.min = records.front().bound;
  s.max = records.front().bound;
  for (const CampaignRecord& r : records) {
    sum += r.bound;
    s.min = std::min(s.min, r.bound);
    s.max = std::max(s.max, r.bound);
  }
  s.mean = sum / static_cast<double>(records.size());
  for (const auto& [edge, count] : histogram(records, bins)) s.histogram.push_back(count);
  return s;
}

}  // namespace

std::vector<std::pair<double, long>> histogram(const std::vector<CampaignRecord>& records,
                                               int bins) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  const double lo = 0.0, hi = 0.5;
  const double width = (hi - lo) / bins;
  std::vector<std::pair<double, long>> out;
  out.reserve(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) out.emplace_back(lo + b * width, 0L);
  for (const CampaignRecord& r : records) {
    int b = static_cast<int>(std::floor((r.bound - lo) / width));
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;  // closed upper edge on the last cell
    ++out[static_cast<std::size_t>(b)].second;
  }
  return out;
}

std::vector<CampaignRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record file: " + path.string());
  std::vector<CampaignRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == kHeader) continue;
    CampaignRecord r;
    char reference[64] = {0};
    std::uint64_t seed = 0;
    if (std::sscanf(line.c_str(), "%ld,%" SCNx64 ",%63[^,],%lg,%lg,%lg", &r.index, &seed,
                    reference, &r.lambda1, &r.lambda2, &r.bound) != 6) {
      throw std::runtime_error("malformed record line: " + line);
    }
    r.substream_seed = seed;
    r.reference = reference;
    records.push_back(std::move(r));
  }
  return records;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("campaign: samples must be >= 1");
  if (cfg.bins < 1) throw std::invalid_argument("campaign: bins must be >= 1");

  std::vector<bounds::ReferenceChoice> refs;
  for (const bounds::ReferenceChoice& ref : bounds::default_references()) {
    if ((ref.tag == "bell" && cfg.use_bell) || (ref.tag == "cc" && cfg.use_cc)) {
      refs.push_back(ref);
    }
  }
  if (refs.empty()) throw std::invalid_argument("campaign: no reference state enabled");

  std::vector<CampaignRecord> done;
  std::set<long> done_indices;
  const bool persist = !cfg.out.empty();
  if (persist && cfg.resume && std::filesystem::exists(cfg.out)) {
    done = read_records(cfg.out);
    for (const CampaignRecord& r : done) done_indices.insert(r.index);
  }

  std::vector<long> pending;
  for (long i = 0; i < cfg.samples; ++i) {
    if (done_indices.count(i) == 0) pending.push_back(i);
  }

  std::vector<CampaignRecord> fresh(pending.size());
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const unsigned hw = std::thread::hardware_concurrency();
    const int n_threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw > 0 ? hw : 2);
    auto worker = [&]() {
      try {
        while (true) {
          const std::size_t k = next.fetch_add(1);
          if (k >= pending.size()) break;
          fresh[k] = evaluate_sample(pending[k], cfg, refs);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  if (persist) {
    const bool new_file = !(cfg.resume && std::filesystem::exists(cfg.out));
    std::ofstream out(cfg.out, new_file ? std::ios::trunc : std::ios::app);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.out.string());
    if (new_file) out << kHeader << '\n';
    long since_flush = 0;
    for (const CampaignRecord& r : fresh) {
      out << format_record(r) << '\n';
      if (++since_flush % kFlushCadence == 0) out.flush();
    }
    out.flush();
    if (!out) throw std::runtime_error("write failure on: " + cfg.out.string());
  }

  CampaignResult result;
  result.records = std::move(done);
  result.records.insert(result.records.end(), fresh.begin(), fresh.end());
  std::sort(result.records.begin(), result.records.end(),
            [](const CampaignRecord& a, const CampaignRecord& b) { return a.index < b.index; });
  result.summary = summarize(result.records, cfg.bins);
  return result;
}

std::string summary_to_json(const CampaignSummary& summary) {
  nlohmann::json doc;
  doc["samples"] = summary.samples;
  doc["mean"] = summary.mean;
  doc["min"] = summary.min;
  doc["max"] = summary.max;
  nlohmann::json bins = nlohmann::json::array();
  const double width = summary.bins > 0 ? 0.5 / summary.bins : 0.0;
  for (std::size_t b = 0; b < summary.histogram.size(); ++b) {
    bins.push_back({{"lo", static_cast<double>(b) * width}, {"count", summary.histogram[b]}});
  }
  doc["bins"] = std::move(bins);
  return doc.dump(2);
}

}  // namespace nlqc::campaign
