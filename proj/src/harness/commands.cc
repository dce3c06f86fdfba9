// Copyright 2026 The Selective ANC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sanc/harness/commands.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sanc/dsp/matrix_io.h"
#include "sanc/dsp/spectrum.h"
#include "sanc/error.h"
#include "sanc/harness/csv.h"

namespace sanc {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::vector<double> kRatioGrid = {5000.0, 10000.0, 20000.0, 50000.0};

std::string Flags(const MetricValue& v) { return v.flag; }

std::string JoinFlags(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + ";" + b;
}

void WriteResolvedConfig(const ExperimentSpec& spec, const std::string& dir) {
  std::ofstream f(fs::path(dir) / "config.json");
  if (!f) throw Error(ErrorCode::kIo, "cannot write config.json in " + dir);
  f << spec.ToJson().dump(2) << "\n";
}

int SpectrumFft(double fs) {
  int n = 256;
  while (n < fs / 8.0) n <<= 1;
  return n;
}

void WriteTrace(const RunResult& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << "n,d,e,y\n";
  char buf[128];
  for (size_t n = 0; n < r.system.e.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g\n", n, r.d[n],
                  r.system.e[n], r.system.y[n]);
    f << buf;
  }
}

void WriteOptimal(const OptimalSolution& s, const std::string& stem) {
  Eigen::MatrixXd m(s.w.size(), 4);
  m.col(0) = s.w;
  m.col(1) = s.wiener_term;
  m.col(2) = s.constraint_term;
  m.col(3) = s.coupling_term;
  WriteMatrix(stem + ".bin", m);
  json j = {{"columns", {"w", "wiener_term", "constraint_term", "coupling_term"}},
            {"beta", s.beta},
            {"rho", s.rho},
            {"residual_norm", s.residual_norm},
            {"lambda_norm", s.lambda.norm()}};
  std::ofstream f(stem + ".json");
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + stem + ".json");
  f << j.dump(2) << "\n";
}

}  // namespace

int CmdRun(const ExperimentSpec& spec, const CommandOptions& options) {
  const std::string hash = spec.Hash();
  const auto results = RunExperiment(spec, options.jobs);
  fs::create_directories(options.out_dir);
  WriteResolvedConfig(spec, options.out_dir);
  const fs::path dir = options.out_dir;
  CsvWriter csv((dir / "metrics.csv").string(),
                {"scenario_id", "metric", "band_lo", "band_hi", "value_db",
                 "window_start", "window_end", "flags", "seed", "config_hash"});
  bool diverged = false;
  for (const auto& r : results) {
    const auto& m = r.metrics;
    const std::string ws = std::to_string(m.window.begin);
    const std::string we = std::to_string(m.window.end);
    const std::string seed = std::to_string(r.seed);
    auto row = [&](const std::string& metric, double lo, double hi, double v,
                   const std::string& flags) {
      csv.Row({r.scenario_id, metric, FormatNumber(lo), FormatNumber(hi),
               FormatNumber(v), ws, we, flags, seed, hash});
    };
    if (r.system.diverged) {
      diverged = true;
      row("diverged", 0.0, 0.0, std::nan(""), r.system.diagnostic);
    }
    if (r.system.e.size() >= 4) {
      const double nyq = spec.scene.fs / 2.0;
      row("nr", 0.0, nyq, m.nr.db, Flags(m.nr));
      row("sdi", spec.pipeline.sdi_highpass_hz, nyq, m.sdi.db, Flags(m.sdi));
      row("sdi_raw", 0.0, nyq, m.sdi_raw.db, Flags(m.sdi_raw));
      row("energy_ratio", 0.0, nyq,
          m.energy_ratio > 0.0 ? 10.0 * std::log10(m.energy_ratio)
                               : -kDbLimit,
          m.energy_ratio > 0.0 ? "" : "floored");
      for (size_t b = 0; b < m.band_nr.size(); ++b) {
        row("band_nr", spec.pipeline.bands[b].first,
            spec.pipeline.bands[b].second, m.band_nr[b].db, Flags(m.band_nr[b]));
      }
      WriteTrace(r, (dir / ("trace_" + r.scenario_id + ".csv")).string());
      const int nfft = SpectrumFft(spec.scene.fs);
      if (static_cast<int>(r.system.e.size()) >= nfft) {
        WriteSpectrumCsv(
            (dir / ("spectrum_" + r.scenario_id + "_e.csv")).string(),
            WelchPsd(Signal(r.system.e, spec.scene.fs), nfft));
        WriteSpectrumCsv(
            (dir / ("spectrum_" + r.scenario_id + "_d.csv")).string(),
            WelchPsd(Signal(r.d, spec.scene.fs), nfft));
      }
    }
    if (r.system.trace) {
      r.system.trace->WriteSnapshots(
          (dir / ("snapshots_" + r.scenario_id + ".bin")).string());
    }
    if (r.system.solution) {
      WriteOptimal(*r.system.solution,
                   (dir / ("optimal_" + r.scenario_id)).string());
    }
  }
  csv.Close();
  if (diverged) {
    std::cerr << "error: divergence detected, see metrics.csv\n";
    return kExitDivergence;
  }
  return kExitOk;
}

int CmdDirectivity(const ExperimentSpec& spec, const CommandOptions& options) {
  const std::string hash = spec.Hash();
  const auto rows = DirectivitySweep(spec, options.jobs);
  fs::create_directories(options.out_dir);
  WriteResolvedConfig(spec, options.out_dir);
  CsvWriter csv((fs::path(options.out_dir) / "directivity.csv").string(),
                {"angle_deg", "band_lo", "band_hi", "nr_db", "flags", "seed",
                 "config_hash"});
  for (const auto& r : rows) {
    csv.Row({FormatNumber(r.angle_deg), FormatNumber(r.band.first),
             FormatNumber(r.band.second), FormatNumber(r.nr.db), r.nr.flag,
             std::to_string(r.seed), hash});
  }
  csv.Close();
  return kExitOk;
}

int CmdRobustness(const ExperimentSpec& in, const CommandOptions& options) {
  ExperimentSpec spec = in;
  if (options.ratio_grid && spec.ratio_grid.empty()) spec.ratio_grid = kRatioGrid;
  const std::string hash = spec.Hash();
  const auto rows = RobustnessSweep(spec, options.jobs);
  fs::create_directories(options.out_dir);
  WriteResolvedConfig(spec, options.out_dir);
  CsvWriter csv((fs::path(options.out_dir) / "robustness.csv").string(),
                {"ssnr_db", "rule", "ratio", "nr_db", "sdi_db", "beta", "rho",
                 "flags", "seed", "config_hash"});
  for (const auto& r : rows) {
    csv.Row({FormatNumber(r.ssnr_db), r.rule, FormatNumber(r.ratio),
             FormatNumber(r.nr.db), FormatNumber(r.sdi.db), FormatNumber(r.beta),
             FormatNumber(r.rho), JoinFlags(r.nr.flag, r.sdi.flag),
             std::to_string(r.seed), hash});
  }
  csv.Close();
  return kExitOk;
}

int CmdCompare(const ExperimentSpec& spec, const CommandOptions& options) {
  const std::string hash = spec.Hash();
  const auto rows = CompareSweep(spec, options.jobs);
  fs::create_directories(options.out_dir);
  WriteResolvedConfig(spec, options.out_dir);
  CsvWriter csv((fs::path(options.out_dir) / "compare.csv").string(),
                {"snr_db", "system", "energy_pct", "energy_db", "nr_db",
                 "sdi_db", "lag_samples", "flags", "seed", "config_hash"});
  bool diverged = false;
  for (const auto& r : rows) {
    std::string flags = JoinFlags(r.nr.flag, r.sdi.flag);
    if (r.diverged) {
      diverged = true;
      flags = JoinFlags("diverged: " + r.diagnostic, flags);
    }
    csv.Row({FormatNumber(r.snr_db), r.system, FormatNumber(r.energy_pct),
             FormatNumber(r.energy > 0.0 ? 10.0 * std::log10(r.energy)
                                         : -kDbLimit),
             FormatNumber(r.nr.db), FormatNumber(r.sdi.db),
             std::to_string(r.lag), flags, std::to_string(r.seed), hash});
  }
  csv.Close();
  if (diverged) {
    std::cerr << "error: divergence detected, see compare.csv\n";
    return kExitDivergence;
  }
  return kExitOk;
}

int RunCli(int argc, char** argv) {
  CLI::App app{"Selective ANC experiments"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  std::optional<std::string> profile;
  std::optional<uint64_t> seed;
  int jobs = 1;
  bool ratio_grid = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "experiment JSON")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--profile", profile, "desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    sub->add_option("--seed", seed, "override scenario seeds");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* run = app.add_subcommand("run", "single runs");
  auto* dir = app.add_subcommand("directivity", "noise DOA sweep, optimal filter");
  auto* rob = app.add_subcommand("robustness", "SsNR sweep, both regularization rules");
  auto* cmp = app.add_subcommand("compare", "proposed vs baselines over SNR");
  for (auto* s : {run, dir, rob, cmp}) add_common(s);
  rob->add_flag("--ratio-grid", ratio_grid, "add eigenvalue ratios 5000..50000");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::optional<Profile> prof;
    if (profile) prof = ParseProfile(*profile);
    ExperimentSpec spec = LoadExperimentFile(config, prof);
    if (spec.profile == Profile::kPaper) {
      std::cerr << "warning: paper profile (48 kHz, L=768) runs far slower "
                   "than the desk profile\n";
    }
    if (seed) spec.seeds = {*seed};
    CommandOptions opt;
    opt.jobs = jobs;
    opt.ratio_grid = ratio_grid;
    opt.out_dir = out;
    if (opt.out_dir.empty()) opt.out_dir = spec.output_dir;
    if (opt.out_dir.empty()) {
      if (const char* env = std::getenv(kOutputDirEnv)) opt.out_dir = env;
    }
    if (opt.out_dir.empty()) {
      throw Error(ErrorCode::kConfiguration,
                  std::string("no output directory: pass --out, set output_dir "
                              "or ") + kOutputDirEnv);
    }
    if (run->parsed()) return CmdRun(spec, opt);
    if (dir->parsed()) return CmdDirectivity(spec, opt);
    if (rob->parsed()) return CmdRobustness(spec, opt);
    return CmdCompare(spec, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::kDivergence) return kExitDivergence;
    if (e.code() == ErrorCode::kConfiguration) std::cerr << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace sanc
