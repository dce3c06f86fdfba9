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

#include "sanc/harness/experiment.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "sanc/baselines/configurations.h"
#include "sanc/error.h"
#include "sanc/metrics/decouple.h"
#include "sanc/scene/scene_json.h"

namespace sanc {

using json = nlohmann::json;

namespace {

template <typename T>
T Read(const json& j, const char* key, const std::string& ctx) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration, ctx + "." + key + ": " + e.what());
  }
}

template <typename T>
void ReadInto(const json& j, const char* key, const std::string& ctx, T& out) {
  if (j.contains(key)) out = Read<T>(j, key, ctx);
}

RegularizationRule ParseRule(const std::string& s) {
  if (s == "eig_ratio") return RegularizationRule::kEigenRatio;
  if (s == "sensor_noise") return RegularizationRule::kSensorNoise;
  if (s == "fixed") return RegularizationRule::kFixed;
  throw Error(ErrorCode::kConfiguration, "unknown solver rule '" + s + "'");
}

std::string RuleName(RegularizationRule r) {
  switch (r) {
    case RegularizationRule::kEigenRatio: return "eig_ratio";
    case RegularizationRule::kSensorNoise: return "sensor_noise";
    case RegularizationRule::kFixed: return "fixed";
  }
  return "unknown";
}

void ParseConstraint(const json& j, ConstraintOptions& c) {
  const std::string ctx = "constraint";
  RequireKnownKeys(j,
                   {"span", "weighting", "cutoff_hz", "weighting_length",
                    "gamma", "gamma_ratio", "pseudoinverse"},
                   ctx);
  ReadInto(j, "span", ctx, c.span);
  ReadInto(j, "weighting", ctx, c.weighting);
  ReadInto(j, "cutoff_hz", ctx, c.weighting_cutoff_hz);
  ReadInto(j, "weighting_length", ctx, c.weighting_length);
  ReadInto(j, "gamma", ctx, c.gamma);
  ReadInto(j, "gamma_ratio", ctx, c.gamma_ratio);
  ReadInto(j, "pseudoinverse", ctx, c.pseudoinverse);
}

void ParseSolver(const json& j, PipelineConfig& p, double fs) {
  const std::string ctx = "solver";
  RequireKnownKeys(j, {"rule", "ratio", "beta", "rho", "warmup_s"}, ctx);
  if (j.contains("rule")) p.solver.rule = ParseRule(Read<std::string>(j, "rule", ctx));
  ReadInto(j, "ratio", ctx, p.solver.ratio);
  ReadInto(j, "beta", ctx, p.solver.beta);
  ReadInto(j, "rho", ctx, p.solver.rho);
  if (j.contains("warmup_s")) {
    p.stats_warmup =
        static_cast<int>(std::lround(Read<double>(j, "warmup_s", ctx) * fs));
  }
}

void ParseAdaptive(const json& j, PipelineConfig& p, double fs) {
  const std::string ctx = "adaptive";
  RequireKnownKeys(j,
                   {"mu", "vss", "step_scale", "mu_max", "mu_min", "alpha",
                    "beta", "gamma", "projection_stride"},
                   ctx);
  if (j.contains("step_scale")) {
    p.vss = VssParams::Paper().RescaledFor(fs).StepScaled(
        Read<double>(j, "step_scale", ctx));
  }
  ReadInto(j, "mu_max", ctx, p.vss.mu_max);
  ReadInto(j, "mu_min", ctx, p.vss.mu_min);
  ReadInto(j, "alpha", ctx, p.vss.alpha);
  ReadInto(j, "beta", ctx, p.vss.beta);
  ReadInto(j, "gamma", ctx, p.vss.gamma);
  ReadInto(j, "vss", ctx, p.vss.enabled);
  if (j.contains("mu")) p.vss = VssParams::Fixed(Read<double>(j, "mu", ctx));
  ReadInto(j, "projection_stride", ctx, p.projection_stride);
  p.vss.Validate();
  if (p.projection_stride < 1) {
    throw Error(ErrorCode::kConfiguration, "adaptive.projection_stride < 1");
  }
}

void ParseMetrics(const json& j, PipelineConfig& p) {
  const std::string ctx = "metrics";
  RequireKnownKeys(j, {"sdi_highpass_hz", "bands"}, ctx);
  ReadInto(j, "sdi_highpass_hz", ctx, p.sdi_highpass_hz);
  if (j.contains("bands")) {
    p.bands.clear();
    for (const auto& b : Read<std::vector<std::vector<double>>>(j, "bands", ctx)) {
      if (b.size() != 2 || !(b[0] >= 0.0) || !(b[1] > b[0])) {
        throw Error(ErrorCode::kConfiguration, "metrics.bands: need [lo, hi], lo < hi");
      }
      p.bands.emplace_back(b[0], b[1]);
    }
  }
}

json ConstraintToJson(const ConstraintOptions& c) {
  return {{"span", c.span},
          {"weighting", c.weighting},
          {"cutoff_hz", c.weighting_cutoff_hz},
          {"weighting_length", c.weighting_length},
          {"gamma", c.gamma},
          {"gamma_ratio", c.gamma_ratio},
          {"pseudoinverse", c.pseudoinverse}};
}

json BaselineToJson(const BaselineConfig& b) {
  json j = {{"kind", BaselineKindName(b.kind)},
            {"anc_mics", b.anc_mics},
            {"bf_mics", b.bf_mics},
            {"extraction_delay_ms", b.extraction_delay_ms},
            {"bf_length", b.bf_L},
            {"bf_mu", b.bf_mu}};
  if (std::isinf(b.extraction_gain_db)) {
    j["extraction_gain_db"] = nullptr;
  } else {
    j["extraction_gain_db"] = b.extraction_gain_db;
  }
  return j;
}

std::string ScenarioId(const std::string& prefix, const ScenarioPoint& p,
                       SweepAxis axis) {
  std::string id = prefix;
  if (p.sweep_value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "_%s%g", SweepAxisName(axis).c_str(),
                  *p.sweep_value);
    id += buf;
  }
  return id + "_s" + std::to_string(p.seed);
}

}  // namespace

Profile ParseProfile(const std::string& name) {
  if (name == "desk") return Profile::kDesk;
  if (name == "paper") return Profile::kPaper;
  throw Error(ErrorCode::kConfiguration, "unknown profile '" + name + "'");
}

std::string ProfileName(Profile p) {
  return p == Profile::kDesk ? "desk" : "paper";
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "none") return SweepAxis::kNone;
  if (name == "doa") return SweepAxis::kDoa;
  if (name == "ssnr") return SweepAxis::kSsnr;
  if (name == "snr") return SweepAxis::kSnr;
  throw Error(ErrorCode::kConfiguration, "unknown sweep axis '" + name + "'");
}

std::string SweepAxisName(SweepAxis a) {
  switch (a) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kDoa: return "doa";
    case SweepAxis::kSsnr: return "ssnr";
    case SweepAxis::kSnr: return "snr";
  }
  return "none";
}

int ExperimentSpec::DurationSamples() const {
  return static_cast<int>(std::lround(duration_s * scene.fs));
}

void ExperimentSpec::Validate() const {
  scene.Validate();
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw Error(ErrorCode::kConfiguration, "duration_s must be positive");
  }
  if (DurationSamples() < 4 * scene.L) {
    throw Error(ErrorCode::kConfiguration, "duration shorter than 4 filter lengths");
  }
  if (controllers.empty()) {
    throw Error(ErrorCode::kConfiguration, "no controller selected");
  }
  if (seeds.empty()) throw Error(ErrorCode::kConfiguration, "no seeds");
  for (double v : sweep_values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kConfiguration, "sweep values must be finite");
    }
  }
  if (axis != SweepAxis::kNone && sweep_values.empty()) {
    throw Error(ErrorCode::kConfiguration, "sweep values empty");
  }
  if (axis == SweepAxis::kDoa && scene.noises.empty()) {
    throw Error(ErrorCode::kConfiguration, "doa sweep needs a noise source");
  }
  for (double r : ratio_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kConfiguration, "ratio_grid values must be > 0");
    }
  }
  if (!(pipeline.hop_s > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "hop_s must be positive");
  }
}

json ExperimentSpec::ToJson() const {
  json j;
  j["version"] = kExperimentSchemaVersion;
  j["profile"] = ProfileName(profile);
  j["scene"] = SceneToJson(scene);
  json ctl = json::array();
  for (auto c : controllers) ctl.push_back(ControllerKindName(c));
  j["controller"] = ctl;
  j["duration_s"] = duration_s;
  j["hop_s"] = pipeline.hop_s;
  j["seeds"] = seeds;
  j["sweep"] = {{"axis", SweepAxisName(axis)}, {"values", sweep_values}};
  j["constraint"] = ConstraintToJson(pipeline.constraint);
  j["solver"] = {{"rule", RuleName(pipeline.solver.rule)},
                 {"ratio", pipeline.solver.ratio},
                 {"beta", pipeline.solver.beta},
                 {"rho", pipeline.solver.rho},
                 {"warmup_s", pipeline.stats_warmup / scene.fs}};
  const VssParams& v = pipeline.vss;
  j["adaptive"] = {{"vss", v.enabled},          {"mu_max", v.mu_max},
                   {"mu_min", v.mu_min},        {"alpha", v.alpha},
                   {"beta", v.beta},            {"gamma", v.gamma},
                   {"projection_stride", pipeline.projection_stride}};
  json bands = json::array();
  for (const auto& b : pipeline.bands) bands.push_back({b.first, b.second});
  j["metrics"] = {{"sdi_highpass_hz", pipeline.sdi_highpass_hz},
                  {"bands", bands}};
  j["robustness"] = {{"ratio_grid", ratio_grid}};
  if (pipeline.baseline) j["scene"]["baseline"] = BaselineToJson(*pipeline.baseline);
  return j;
}

uint64_t Fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ExperimentSpec::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(ToJson().dump())));
  return buf;
}

void ApplyPaperProfile(AcousticScene& scene) {
  scene.fs = 48000.0;
  scene.L = 768;
  scene.secondary_delay = 10;
  scene.bulk_delay = 48.0;
}

ExperimentSpec ParseExperimentJson(const json& j, const std::string& base_dir,
                                   std::optional<Profile> requested) {
  const std::string ctx = "experiment";
  RequireKnownKeys(j,
                   {"version", "profile", "scene", "scene_file", "controller",
                    "duration_s", "hop_s", "seed", "seeds", "sweep",
                    "output_dir", "constraint", "solver", "adaptive",
                    "metrics", "robustness"},
                   ctx);
  if (!j.contains("version")) {
    throw Error(ErrorCode::kConfiguration, "experiment.version is required");
  }
  const int version = Read<int>(j, "version", ctx);
  if (version != kExperimentSchemaVersion) {
    throw Error(ErrorCode::kConfiguration,
                "unsupported experiment version " + std::to_string(version));
  }
  if (j.contains("scene") && j.contains("scene_file")) {
    throw Error(ErrorCode::kConfiguration, "give either scene or scene_file");
  }
  Profile profile = requested.value_or(Profile::kDesk);
  if (j.contains("profile")) {
    const Profile file = ParseProfile(Read<std::string>(j, "profile", ctx));
    if (requested && *requested != file) {
      throw Error(ErrorCode::kConfiguration,
                  "config is resolved for profile '" + ProfileName(file) +
                      "', requested '" + ProfileName(*requested) + "'");
    }
    profile = file;
  }
  ExperimentSpec spec;
  spec.profile = profile;
  ParsedScene parsed;
  if (j.contains("scene_file")) {
    std::filesystem::path p = Read<std::string>(j, "scene_file", ctx);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    parsed = LoadSceneFile(p.string());
  } else if (j.contains("scene")) {
    parsed = ParseSceneJson(j["scene"]);
  } else {
    parsed = ParseSceneJson(json{{"version", kSceneSchemaVersion}});
  }
  spec.scene = parsed.scene;
  if (profile == Profile::kPaper) ApplyPaperProfile(spec.scene);
  const double fs = spec.scene.fs;

  spec.pipeline = DefaultPipelineConfig(
      fs, profile == Profile::kDesk ? kDeskStepScale : 1.0);
  if (!parsed.baseline.is_null()) {
    spec.pipeline.baseline = ParseBaselineJson(parsed.baseline, spec.scene.geometry);
  }

  if (j.contains("controller")) {
    spec.controllers.clear();
    const json& c = j["controller"];
    if (c.is_string()) {
      spec.controllers.push_back(ParseControllerKind(c.get<std::string>()));
    } else if (c.is_array()) {
      for (const auto& e : c) {
        if (!e.is_string()) {
          throw Error(ErrorCode::kConfiguration, "controller: expected strings");
        }
        spec.controllers.push_back(ParseControllerKind(e.get<std::string>()));
      }
    } else {
      throw Error(ErrorCode::kConfiguration, "controller: expected string or list");
    }
  }
  ReadInto(j, "duration_s", ctx, spec.duration_s);
  ReadInto(j, "hop_s", ctx, spec.pipeline.hop_s);
  if (j.contains("seed") && j.contains("seeds")) {
    throw Error(ErrorCode::kConfiguration, "give either seed or seeds");
  }
  if (j.contains("seed")) spec.seeds = {Read<uint64_t>(j, "seed", ctx)};
  if (j.contains("seeds")) spec.seeds = Read<std::vector<uint64_t>>(j, "seeds", ctx);
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    RequireKnownKeys(s, {"axis", "values"}, "sweep");
    spec.axis = ParseSweepAxis(Read<std::string>(s, "axis", "sweep"));
    ReadInto(s, "values", "sweep", spec.sweep_values);
  }
  ReadInto(j, "output_dir", ctx, spec.output_dir);
  if (j.contains("constraint")) ParseConstraint(j["constraint"], spec.pipeline.constraint);
  if (j.contains("solver")) ParseSolver(j["solver"], spec.pipeline, fs);
  if (j.contains("adaptive")) ParseAdaptive(j["adaptive"], spec.pipeline, fs);
  if (j.contains("metrics")) ParseMetrics(j["metrics"], spec.pipeline);
  if (j.contains("robustness")) {
    RequireKnownKeys(j["robustness"], {"ratio_grid"}, "robustness");
    ReadInto(j["robustness"], "ratio_grid", "robustness", spec.ratio_grid);
  }
  spec.Validate();
  return spec;
}

ExperimentSpec LoadExperimentFile(const std::string& path,
                                  std::optional<Profile> profile) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open config " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration, path + ": " + e.what());
  }
  return ParseExperimentJson(
      j, std::filesystem::path(path).parent_path().string(), profile);
}

AcousticScene SeededScene(const AcousticScene& scene, uint64_t seed) {
  AcousticScene s = scene;
  s.desired.signal.seed = seed * 100 + 1;
  for (size_t i = 0; i < s.noises.size(); ++i) {
    s.noises[i].signal.seed = seed * 100 + 2 + i;
  }
  if (s.sensor_noise) s.sensor_noise->seed = seed * 100 + 50;
  return s;
}

SensorNoiseSpec DefaultSensorNoise(const AcousticScene& scene) {
  SensorNoiseSpec sn;
  if (scene.geometry.preset == "glasses6") {
    sn.affected = {0, 2, 3, 4};
    sn.reference_mic = 4;
  } else {
    for (int k = 0; k < scene.geometry.size(); ++k) {
      if (k != scene.geometry.error_mic_index) sn.affected.push_back(k);
    }
    sn.reference_mic = scene.ReferenceMic();
  }
  return sn;
}

void ParallelFor(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<ScenarioPoint> ExpandScenarios(const ExperimentSpec& spec) {
  std::vector<ScenarioPoint> out;
  for (uint64_t seed : spec.seeds) {
    if (spec.axis == SweepAxis::kNone) {
      out.push_back({seed, std::nullopt, SeededScene(spec.scene, seed)});
      continue;
    }
    for (double v : spec.sweep_values) {
      AcousticScene s = spec.scene;
      switch (spec.axis) {
        case SweepAxis::kDoa:
          s.noises.front().doa_deg = v;
          break;
        case SweepAxis::kSsnr:
          if (!s.sensor_noise) s.sensor_noise = DefaultSensorNoise(s);
          s.sensor_noise->ssnr_db = v;
          break;
        case SweepAxis::kSnr:
          s.snr_db = v;
          break;
        case SweepAxis::kNone:
          break;
      }
      out.push_back({seed, v, SeededScene(s, seed)});
    }
  }
  return out;
}

std::vector<RunResult> RunExperiment(const ExperimentSpec& spec, int jobs) {
  const auto points = ExpandScenarios(spec);
  const int nc = static_cast<int>(spec.controllers.size());
  std::vector<RunResult> out(points.size() * nc);
  ParallelFor(static_cast<int>(points.size()), jobs, [&](int i) {
    const auto& p = points[i];
    const RenderedScene r = Render(p.scene, spec.DurationSamples());
    for (int c = 0; c < nc; ++c) {
      RunResult& rr = out[i * nc + c];
      rr.kind = spec.controllers[c];
      rr.seed = p.seed;
      rr.sweep_value = p.sweep_value;
      rr.scenario_id = ScenarioId(ControllerKindName(rr.kind), p, spec.axis);
      rr.system = RunSystem(rr.kind, r, spec.pipeline);
      rr.d.assign(r.d.begin(), r.d.begin() + rr.system.e.size());
      if (rr.system.e.size() >= 4) {
        rr.metrics = Summarize(rr.system, r, spec.pipeline);
      }
    }
  });
  return out;
}

std::vector<DirectivityRow> DirectivitySweep(const ExperimentSpec& spec,
                                             int jobs) {
  if (spec.axis != SweepAxis::kDoa || spec.sweep_values.empty()) {
    throw Error(ErrorCode::kConfiguration, "directivity needs a doa sweep");
  }
  const auto points = ExpandScenarios(spec);
  const size_t nb = spec.pipeline.bands.size() + 1;
  std::vector<DirectivityRow> out(points.size() * nb);
  ParallelFor(static_cast<int>(points.size()), jobs, [&](int i) {
    const auto& p = points[i];
    const RenderedScene r = Render(p.scene, spec.DurationSamples());
    const auto res = RunSystem(ControllerKind::kProposedOptimal, r, spec.pipeline);
    const auto m = Summarize(res, r, spec.pipeline);
    out[i * nb] = {*p.sweep_value, {0.0, r.fs / 2.0}, m.nr, p.seed};
    for (size_t b = 0; b + 1 < nb; ++b) {
      out[i * nb + b + 1] = {*p.sweep_value, spec.pipeline.bands[b],
                             b < m.band_nr.size() ? m.band_nr[b] : MetricValue{},
                             p.seed};
    }
  });
  return out;
}

std::vector<RobustnessRow> RobustnessSweep(const ExperimentSpec& spec, int jobs) {
  if (spec.axis != SweepAxis::kSsnr || spec.sweep_values.empty()) {
    throw Error(ErrorCode::kConfiguration, "robustness needs an ssnr sweep");
  }
  struct Variant {
    std::string rule;
    RegularizationRule r;
    double ratio;
  };
  std::vector<Variant> variants = {
      {"eig_ratio", RegularizationRule::kEigenRatio, spec.pipeline.solver.ratio},
      {"sensor_noise", RegularizationRule::kSensorNoise, 0.0}};
  for (double g : spec.ratio_grid) {
    variants.push_back({"eig_grid", RegularizationRule::kEigenRatio, g});
  }
  const auto points = ExpandScenarios(spec);
  const size_t nv = variants.size();
  std::vector<RobustnessRow> out(points.size() * nv);
  ParallelFor(static_cast<int>(points.size()), jobs, [&](int i) {
    const auto& p = points[i];
    const RenderedScene r = Render(p.scene, spec.DurationSamples());
    const auto setup = BuildProposedSetup(r, spec.pipeline.constraint);
    for (size_t v = 0; v < nv; ++v) {
      PipelineConfig cfg = spec.pipeline;
      cfg.solver.rule = variants[v].r;
      cfg.solver.ratio = variants[v].ratio;
      SystemResult res;
      res.kind = ControllerKind::kProposedOptimal;
      res.solution = SolveProposedOptimal(r, cfg, setup);
      std::vector<std::vector<double>> mix(r.num_mics());
      for (int k = 0; k < r.num_mics(); ++k) mix[k] = r.Mic(k);
      mix[r.error_mic] = r.d;
      res.e = FixedFilterResidual(res.solution->w, r, mix, &res.y);
      res.e_s = FixedFilterResidual(res.solution->w, r, r.desired);
      res.v_anc = FixedFilterResidual(res.solution->w, r, r.noise);
      const auto m = Summarize(res, r, cfg);
      RobustnessRow& row = out[i * nv + v];
      row.ssnr_db = *p.sweep_value;
      row.rule = variants[v].rule;
      row.ratio = variants[v].ratio;
      row.nr = m.nr;
      row.sdi = m.sdi;
      row.beta = res.solution->beta;
      row.rho = res.solution->rho;
      row.seed = p.seed;
    }
  });
  return out;
}

std::vector<CompareRow> CompareSweep(const ExperimentSpec& spec, int jobs) {
  if (spec.axis != SweepAxis::kSnr || spec.sweep_values.empty()) {
    throw Error(ErrorCode::kConfiguration, "compare needs an snr sweep");
  }
  ControllerKind proposed = ControllerKind::kProposedAdaptive;
  for (auto c : spec.controllers) {
    if (c == ControllerKind::kProposedOptimal ||
        c == ControllerKind::kProposedAdaptive) {
      proposed = c;
      break;
    }
  }
  const std::vector<ControllerKind> systems = {
      proposed, ControllerKind::kPartiallyCoupled, ControllerKind::kDecoupled};
  const auto points = ExpandScenarios(spec);
  const size_t ns = systems.size();
  std::vector<CompareRow> out(points.size() * ns);
  ParallelFor(static_cast<int>(points.size()), jobs, [&](int i) {
    const auto& p = points[i];
    const RenderedScene r = Render(p.scene, spec.DurationSamples());
    const int max_lag = static_cast<int>(std::lround(0.02 * r.fs));
    for (size_t k = 0; k < ns; ++k) {
      const auto res = RunSystem(systems[k], r, spec.pipeline);
      CompareRow& row = out[i * ns + k];
      row.snr_db = *p.sweep_value;
      row.system = ControllerKindName(systems[k]);
      row.seed = p.seed;
      row.diverged = res.diverged;
      row.diagnostic = res.diagnostic;
      if (res.diverged || res.e.size() < 4) {
        row.nr.flag = row.sdi.flag = "undefined";
        continue;
      }
      const auto m = Summarize(res, r, spec.pipeline);
      row.energy = MeanSquare(res.y, m.window.begin, m.window.end);
      row.nr = m.nr;
      row.sdi = m.sdi;
      std::vector<double> s(r.s().begin(), r.s().begin() + res.e.size());
      row.lag = MeanSquare(s, m.window.begin, m.window.end) > 0.0
                    ? EstimateLag(s, res.e_s, max_lag, m.window)
                    : 0;
    }
    const double ref = out[i * ns + 1].energy;
    for (size_t k = 0; k < ns; ++k) {
      out[i * ns + k].energy_pct =
          ref > 0.0 ? 100.0 * out[i * ns + k].energy / ref : 0.0;
    }
  });
  return out;
}

}  // namespace sanc
