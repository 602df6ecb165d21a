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

#include "nlqc/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

namespace nlqc::cli {

namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string technique_name(bounds::Technique t) {
  return t == bounds::Technique::cc ? "cc" : "ce";
}

std::string orientation_name(bounds::Orientation o) {
  return o == bounds::Orientation::as_given ? "as-given" : "swapped";
}

nlohmann::json bloch_json(const qmath::DensityMatrix& phi) {
  const std::array<double, 3> r = qmath::bloch_of(phi.mat);
  return nlohmann::json::array({r[0], r[1], r[2]});
}

nlohmann::json report_json(const bounds::BoundReport& report) {
  nlohmann::json j;
  j["technique"] = technique_name(report.technique);
  j["reference"] = report.reference;
  j["orientation"] = orientation_name(report.orientation);
  j["lambda1"] = report.lambda1;
  j["lambda2"] = report.lambda2;
  j["bound"] = report.bound;
  j["applicable"] = report.applicable;
  j["flag"] = report.flag;
  j["phi1_bloch"] = bloch_json(report.phi1_witness);
  j["phi2_bloch"] = bloch_json(report.phi2_witness);
  j["restarts"] = report.meta.restarts;
  j["iterations"] = report.meta.iterations;
  j["converged"] = report.meta.converged;
  return j;
}

void render_report_human(const bounds::BoundReport& report, std::ostream& out) {
  out << "technique: " << technique_name(report.technique) << "\n";
  out << "  bound:       " << fixed3(report.bound) << "\n";
  out << "  lambda1:     " << fixed3(report.lambda1) << "\n";
  out << "  lambda2:     " << fixed3(report.lambda2) << "\n";
  out << "  reference:   " << reference_display(report.reference) << "\n";
  out << "  orientation: " << orientation_name(report.orientation) << "\n";
  const std::array<double, 3> r1 = qmath::bloch_of(report.phi1_witness.mat);
  const std::array<double, 3> r2 = qmath::bloch_of(report.phi2_witness.mat);
  out << "  phi1 Bloch:  [" << fixed3(r1[0]) << ", " << fixed3(r1[1]) << ", " << fixed3(r1[2])
      << "]\n";
  out << "  phi2 Bloch:  [" << fixed3(r2[0]) << ", " << fixed3(r2[1]) << ", " << fixed3(r2[2])
      << "]\n";
  if (!report.applicable) out << "  flag:        " << report.flag << "\n";
}

gates::Gate resolve_gate(const std::string& name, const std::string& file) {
  if (name.empty() == file.empty()) {
    throw CLI::ValidationError("gate", "exactly one of a catalog name or --file is required");
  }
  if (!name.empty()) return gates::catalog_lookup(name);
  return gates::gate_from_file(file);
}

std::vector<bounds::ReferenceChoice> resolve_references(const std::string& selector) {
  if (selector == "both") return bounds::default_references();
  if (selector == "bell") return {{"bell", gates::bell_state()}};
  if (selector == "cc") return {{"cc", gates::classically_correlated()}};
  // anything else is a path to a density matrix file
  return {{"custom", gates::density_from_file(selector)}};
}

struct TableRow {
  std::string gate;
  std::optional<bounds::BoundReport> cc;
  std::optional<bounds::BoundReport> ce;
};

}  // namespace

std::string reference_display(const std::string& tag) {
  if (tag == "bell") return "Psi+";
  if (tag == "cc") return "rho_cc";
  if (tag == "cc|bell" || tag == "bell|cc") return "rho_cc or Psi+";
  return tag;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("NLQC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return 12345;
}

int cmd_gate(const GateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const gates::Gate gate = resolve_gate(opts.gate, opts.file);
    const bool want_cc = opts.technique == "cc" || opts.technique == "both";
    const bool want_ce = opts.technique == "ce" || opts.technique == "both";
    if (!want_cc && !want_ce) {
      err << "unknown technique '" << opts.technique << "' (expected cc, ce, or both)\n";
      return kExitUsage;
    }
    if (opts.eps && !bounds::NoiseTerms{*opts.eps, 1}.cc_admissible()) {
      err << "--eps must satisfy 0 <= eps < 1/4 for the cc bound\n";
      return kExitUsage;
    }
    if (opts.gamma && *opts.gamma < 0.0) {
      err << "--gamma must be non-negative\n";
      return kExitUsage;
    }

    std::vector<bounds::BoundReport> reports;
    if (want_cc) {
      Rng rng = Rng::substream(opts.seed, 0);
      reports.push_back(bounds::cc_bound(gate, resolve_references(opts.reference),
                                         /*try_both_orientations=*/true, rng, opts.restarts));
    }
    if (want_ce) {
      Rng rng = Rng::substream(opts.seed, 1);
      reports.push_back(bounds::ce_bound(gate, rng, opts.restarts));
    }

    if (opts.format == "structured" || opts.format == "json") {
      nlohmann::json doc;
      doc["gate"] = gate.name;
      nlohmann::json arr = nlohmann::json::array();
      for (const bounds::BoundReport& r : reports) {
        nlohmann::json j = report_json(r);
        if (r.technique == bounds::Technique::cc && opts.eps) {
          j["noisy_bound"] = bounds::noisy_cc_bound(r.lambda1, r.lambda2, *opts.eps, 1);
          j["eps"] = *opts.eps;
        }
        if (r.technique == bounds::Technique::ce && opts.gamma && r.lambda2 <= 1.0) {
          j["noisy_bound"] = bounds::noisy_ce_bound(r.lambda1, r.lambda2, *opts.gamma);
          j["gamma"] = *opts.gamma;
        }
        arr.push_back(std::move(j));
      }
      doc["reports"] = std::move(arr);
      out << doc.dump(2) << "\n";
    } else {
      out << "gate: " << gate.name << "\n";
      for (const bounds::BoundReport& r : reports) {
        render_report_human(r, out);
        if (r.technique == bounds::Technique::cc && opts.eps) {
          out << "  noisy bound (eps=" << *opts.eps
              << "): " << fixed3(bounds::noisy_cc_bound(r.lambda1, r.lambda2, *opts.eps, 1))
              << "\n";
        }
        if (r.technique == bounds::Technique::ce && opts.gamma && r.lambda2 <= 1.0) {
          out << "  noisy bound (gamma=" << *opts.gamma
              << "): " << fixed3(bounds::noisy_ce_bound(r.lambda1, r.lambda2, *opts.gamma))
              << "\n";
        }
      }
    }
    return kExitOk;
  } catch (const gates::UnknownGateError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const gates::NonUnitaryError& e) {
    err << e.what() << "\n";
    return kExitInvalidMatrix;
  } catch (const gates::MatrixFileError& e) {
    err << e.what() << "\n";
    return kExitInvalidMatrix;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_table(const TableOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const bool want_cc = opts.technique == "cc" || opts.technique == "both";
    const bool want_ce = opts.technique == "ce" || opts.technique == "both";
    if (!want_cc && !want_ce) {
      err << "unknown technique '" << opts.technique << "'\n";
      return kExitUsage;
    }

    const std::vector<std::string>& names = gates::table_gate_names();
    std::vector<TableRow> rows(names.size());

    // Gates are independent; substream seeds keep the result identical for
    // any thread schedule.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= names.size()) break;
        const gates::Gate gate = gates::catalog_lookup(names[k]);
        TableRow row;
        row.gate = gate.name;
        if (want_cc) {
          Rng rng = Rng::substream(opts.seed, 2 * k);
          row.cc = bounds::cc_bound(gate, rng, opts.restarts);
        }
        if (want_ce) {
          Rng rng = Rng::substream(opts.seed, 2 * k + 1);
          row.ce = bounds::ce_bound(gate, rng, opts.restarts);
        }
        rows[k] = std::move(row);
      }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const int n_threads = opts.threads > 0 ? opts.threads : static_cast<int>(hw > 0 ? hw : 2);
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    if (opts.format == "structured" || opts.format == "json") {
      nlohmann::json doc;
      nlohmann::json arr = nlohmann::json::array();
      for (const TableRow& row : rows) {
        nlohmann::json j;
        j["gate"] = row.gate;
        if (row.cc) j["cc"] = report_json(*row.cc);
        if (row.ce) j["ce"] = report_json(*row.ce);
        arr.push_back(std::move(j));
      }
      doc["rows"] = std::move(arr);
      out << doc.dump(2) << "\n";
    } else {
      out << std::left << std::setw(18) << "Gate";
      if (want_ce) out << " | CE bound";
      if (want_cc) out << " | CC bound | Ref. state for CC";
      out << "\n";
      for (const TableRow& row : rows) {
        out << std::left << std::setw(18) << row.gate;
        if (row.ce) out << " | " << std::setw(8) << fixed3(row.ce->bound);
        if (row.cc) {
          out << " | " << std::setw(8) << fixed3(row.cc->bound) << " | "
              << reference_display(row.cc->reference);
        }
        out << "\n";
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_campaign(const CampaignOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    campaign::CampaignConfig cfg;
    cfg.samples = opts.samples;
    cfg.seed = opts.seed;
    cfg.bins = opts.bins;
    cfg.restarts = opts.restarts;
    cfg.out = opts.out;
    cfg.resume = opts.resume;
    cfg.threads = opts.threads;
    cfg.use_bell = opts.reference == "both" || opts.reference == "bell";
    cfg.use_cc = opts.reference == "both" || opts.reference == "cc";
    if (!cfg.use_bell && !cfg.use_cc) {
      err << "campaign reference must be bell, cc, or both\n";
      return kExitUsage;
    }

    const campaign::CampaignResult result = campaign::run_campaign(cfg);
    if (opts.format == "structured" || opts.format == "json") {
      out << campaign::summary_to_json(result.summary) << "\n";
    } else {
      out << "samples: " << result.summary.samples << "\n";
      out << "mean:    " << fixed3(result.summary.mean) << "\n";
      out << "min:     " << fixed3(result.summary.min) << "\n";
      out << "max:     " << fixed3(result.summary.max) << "\n";
      if (!opts.out.empty()) out << "records: " << opts.out << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_repeat(const RepeatOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.n < 1) {
      err << "-n must be >= 1\n";
      return kExitUsage;
    }
    if (opts.technique != "cc" && opts.technique != "ce") {
      err << "repeat technique must be cc or ce\n";
      return kExitUsage;
    }
    if (opts.eps && !bounds::NoiseTerms{*opts.eps, 1}.cc_admissible()) {
      err << "--eps must satisfy 0 <= eps < 1/4\n";
      return kExitUsage;
    }
    const gates::Gate gate = resolve_gate(opts.gate, opts.file);

    bounds::BoundReport report;
    if (opts.technique == "cc") {
      Rng rng = Rng::substream(opts.seed, 0);
      report = bounds::cc_bound(gate, rng, opts.restarts);
    } else {
      Rng rng = Rng::substream(opts.seed, 1);
      report = bounds::ce_bound(gate, rng, opts.restarts);
    }

    const double repeated = bounds::parallel_repetition(report, opts.n);
    out << "gate: " << gate.name << "\n";
    out << "technique: " << opts.technique << "\n";
    out << "single-copy bound: " << fixed3(report.bound) << "\n";
    out << "n: " << opts.n << "\n";
    out << "repeated bound: " << fixed3(repeated) << "\n";
    if (opts.eps && opts.technique == "cc") {
      // Noisy-unitary repetition: each noisy copy still has controllable
      // correlation within Delta(eps, n_A) of the clean values.
      const double per_copy = std::max(
          0.0, 0.5 * (report.lambda1 - report.lambda2) - bounds::delta_correction(*opts.eps, 1));
      out << "noisy repeated bound (eps=" << *opts.eps << "): " << fixed3(opts.n * per_copy)
          << "\n";
    }
    return kExitOk;
  } catch (const bounds::RepetitionInapplicable& e) {
    err << e.what() << "\n";
    return kExitInapplicable;
  } catch (const gates::UnknownGateError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const gates::NonUnitaryError& e) {
    err << e.what() << "\n";
    return kExitInvalidMatrix;
  } catch (const gates::MatrixFileError& e) {
    err << e.what() << "\n";
    return kExitInvalidMatrix;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv) {
  CLI::App app{"controllable correlation / entanglement lower bounds for two-qubit gates"};
  app.require_subcommand(1);

  GateOptions gate_opts;
  gate_opts.seed = default_seed();
  CLI::App* gate_cmd = app.add_subcommand("gate", "evaluate the bounds for a single gate");
  gate_cmd->add_option("name", gate_opts.gate, "catalog gate name");
  gate_cmd->add_option("--file", gate_opts.file, "matrix file with fields dim, re, im");
  gate_cmd->add_option("--technique", gate_opts.technique, "cc | ce | both");
  gate_cmd->add_option("--reference", gate_opts.reference,
                       "bell | cc | both | path to a density matrix file");
  gate_cmd->add_option("--eps", gate_opts.eps, "diamond-norm noise for the cc bound (< 1/4)");
  gate_cmd->add_option("--gamma", gate_opts.gamma, "diamond-norm noise for the ce bound");
  gate_cmd->add_option("--format", gate_opts.format, "human | structured");
  gate_cmd->add_option("--seed", gate_opts.seed, "random seed");
  gate_cmd->add_option("--restarts", gate_opts.restarts, "optimizer restarts");

  TableOptions table_opts;
  table_opts.seed = default_seed();
  CLI::App* table_cmd = app.add_subcommand("table", "evaluate the full gate table");
  table_cmd->add_option("--technique", table_opts.technique, "cc | ce | both");
  table_cmd->add_option("--format", table_opts.format, "human | structured");
  table_cmd->add_option("--seed", table_opts.seed, "random seed");
  table_cmd->add_option("--restarts", table_opts.restarts, "optimizer restarts");
  table_cmd->add_option("--threads", table_opts.threads, "worker threads (0 = auto)");

  CampaignOptions campaign_opts;
  campaign_opts.seed = default_seed();
  CLI::App* campaign_cmd = app.add_subcommand("campaign", "Haar-random sweep of the cc bound");
  campaign_cmd->add_option("--samples", campaign_opts.samples, "number of Haar samples");
  campaign_cmd->add_option("--seed", campaign_opts.seed, "campaign seed");
  campaign_cmd->add_option("--bins", campaign_opts.bins, "histogram bins over [0, 0.5]");
  campaign_cmd->add_option("--restarts", campaign_opts.restarts, "optimizer restarts per sample");
  campaign_cmd->add_option("--out", campaign_opts.out, "record file path");
  campaign_cmd->add_flag("--resume", campaign_opts.resume, "skip samples already in the record file");
  campaign_cmd->add_option("--reference", campaign_opts.reference, "bell | cc | both");
  campaign_cmd->add_option("--format", campaign_opts.format, "human | structured");
  campaign_cmd->add_option("--threads", campaign_opts.threads, "worker threads (0 = auto)");

  RepeatOptions repeat_opts;
  repeat_opts.seed = default_seed();
  CLI::App* repeat_cmd = app.add_subcommand("repeat", "parallel-repetition bound for n copies");
  repeat_cmd->add_option("name", repeat_opts.gate, "catalog gate name");
  repeat_cmd->add_option("--file", repeat_opts.file, "matrix file with fields dim, re, im");
  repeat_cmd->add_option("--technique", repeat_opts.technique, "cc | ce");
  repeat_cmd->add_option("-n,--copies", repeat_opts.n, "number of parallel copies");
  repeat_cmd->add_option("--eps", repeat_opts.eps, "per-copy unitary noise for the cc repetition");
  repeat_cmd->add_option("--seed", repeat_opts.seed, "random seed");
  repeat_cmd->add_option("--restarts", repeat_opts.restarts, "optimizer restarts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gate_cmd->parsed()) return cmd_gate(gate_opts, std::cout, std::cerr);
  if (table_cmd->parsed()) return cmd_table(table_opts, std::cout, std::cerr);
  if (campaign_cmd->parsed()) return cmd_campaign(campaign_opts, std::cout, std::cerr);
  if (repeat_cmd->parsed()) return cmd_repeat(repeat_opts, std::cout, std::cerr);
  return kExitUsage;
}

}  // namespace nlqc::cli
