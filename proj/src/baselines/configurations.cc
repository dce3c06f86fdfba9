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

#include "sanc/baselines/configurations.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "sanc/baselines/frost.h"
#include "sanc/error.h"
#include "sanc/scene/scene_json.h"

namespace sanc {

BaselineKind ParseBaselineKind(const std::string& name) {
  if (name == "unconstrained" || name == "unconstrained_hybrid") {
    return BaselineKind::kUnconstrainedHybrid;
  }
  if (name == "partially_coupled") return BaselineKind::kPartiallyCoupled;
  if (name == "decoupled") return BaselineKind::kDecoupled;
  throw Error(ErrorCode::kConfiguration, "unknown baseline kind '" + name + "'");
}

std::string BaselineKindName(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kUnconstrainedHybrid: return "unconstrained";
    case BaselineKind::kPartiallyCoupled: return "partially_coupled";
    case BaselineKind::kDecoupled: return "decoupled";
  }
  return "unknown";
}

BaselineConfig BaselineConfig::Default(BaselineKind kind,
                                       const ArrayGeometry& g) {
  BaselineConfig c;
  c.kind = kind;
  std::vector<int> refs;
  for (int k = 0; k < g.size(); ++k) {
    if (k != g.error_mic_index) refs.push_back(k);
  }
  const bool glasses = g.preset == "glasses6";
  switch (kind) {
    case BaselineKind::kUnconstrainedHybrid:
      c.anc_mics = refs;
      c.extraction_gain_db = -std::numeric_limits<double>::infinity();
      break;
    case BaselineKind::kPartiallyCoupled:
      c.anc_mics = refs;
      c.bf_mics = glasses ? std::vector<int>{1, 3}
                          : std::vector<int>{refs[0], refs[refs.size() / 2]};
      c.extraction_delay_ms = 1.0;
      break;
    case BaselineKind::kDecoupled:
      if (glasses) {
        c.anc_mics = {0, 2};
        c.bf_mics = {1, 3};
      } else {
        for (size_t i = 0; i < refs.size(); ++i) {
          (i % 2 == 0 ? c.anc_mics : c.bf_mics).push_back(refs[i]);
        }
      }
      c.extraction_delay_ms = 5.0;
      break;
  }
  return c;
}

double BaselineConfig::gain() const {
  if (std::isinf(extraction_gain_db) && extraction_gain_db < 0) return 0.0;
  return std::pow(10.0, extraction_gain_db / 20.0);
}

void BaselineConfig::Validate(const ArrayGeometry& g) const {
  auto check = [&](const std::vector<int>& v, const char* what) {
    std::set<int> seen;
    for (int k : v) {
      if (k < 0 || k >= g.size() || k == g.error_mic_index || !seen.insert(k).second) {
        throw Error(ErrorCode::kConfiguration,
                    std::string("invalid ") + what + " index " + std::to_string(k));
      }
    }
  };
  check(anc_mics, "anc_mics");
  check(bf_mics, "bf_mics");
  if (kind != BaselineKind::kUnconstrainedHybrid && bf_mics.size() < 2) {
    throw Error(ErrorCode::kConfiguration, "beamformer needs >= 2 mics");
  }
  if (kind == BaselineKind::kDecoupled) {
    for (int k : bf_mics) {
      if (std::find(anc_mics.begin(), anc_mics.end(), k) != anc_mics.end()) {
        throw Error(ErrorCode::kConfiguration,
                    "decoupled configuration cannot share mic " +
                        std::to_string(k));
      }
    }
  }
  if (extraction_delay_ms < 0.0) {
    throw Error(ErrorCode::kConfiguration, "negative extraction delay");
  }
}

BaselineConfig ParseBaselineJson(const nlohmann::json& j,
                                 const ArrayGeometry& g) {
  const std::string ctx = "baseline";
  RequireKnownKeys(j,
                   {"kind", "anc_mics", "bf_mics", "extraction_delay_ms",
                    "extraction_gain_db", "bf_length", "bf_mu"},
                   ctx);
  if (!j.contains("kind")) {
    throw Error(ErrorCode::kConfiguration, "baseline.kind is required");
  }
  BaselineConfig c =
      BaselineConfig::Default(ParseBaselineKind(j["kind"].get<std::string>()), g);
  try {
    if (j.contains("anc_mics")) c.anc_mics = j["anc_mics"].get<std::vector<int>>();
    if (j.contains("bf_mics")) c.bf_mics = j["bf_mics"].get<std::vector<int>>();
    if (j.contains("extraction_delay_ms")) {
      c.extraction_delay_ms = j["extraction_delay_ms"].get<double>();
    }
    if (j.contains("extraction_gain_db")) {
      c.extraction_gain_db = j["extraction_gain_db"].is_null()
                                 ? -std::numeric_limits<double>::infinity()
                                 : j["extraction_gain_db"].get<double>();
    }
    if (j.contains("bf_length")) c.bf_L = j["bf_length"].get<int>();
    if (j.contains("bf_mu")) c.bf_mu = j["bf_mu"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration, ctx + ": " + e.what());
  }
  c.Validate(g);
  return c;
}

SimulationTrace RunUnconstrained(const RenderedScene& scene, const VssParams& vss,
                                 int duration, int hop) {
  ControllerConfig cfg;
  cfg.L = scene.L;
  cfg.num_refs = scene.num_mics() - 1;
  cfg.feedback = true;
  cfg.g_hat = scene.g;
  cfg.vss = vss;
  return RunClosedLoop(scene, cfg, duration, hop);
}

SimulationTrace RunBaseline(const RenderedScene& scene,
                            const BaselineConfig& config, const VssParams& vss,
                            int duration, int hop) {
  config.Validate(scene.geometry);
  if (duration > scene.length()) {
    throw Error(ErrorCode::kInsufficientData, "scene shorter than duration");
  }
  const double gain = config.gain();
  const bool use_bf =
      config.kind != BaselineKind::kUnconstrainedHybrid && gain != 0.0;

  ControllerConfig cfg;
  cfg.L = scene.L;
  cfg.num_refs = static_cast<int>(config.anc_mics.size());
  cfg.feedback = true;
  cfg.g_hat = scene.g;
  cfg.vss = vss;
  AncController ctl(cfg);

  SimulationTrace tr;
  tr.hop = hop;
  tr.layout.name = BaselineKindName(config.kind);
  tr.layout.L = scene.L;
  tr.layout.anc_ref_mics = config.anc_mics;
  tr.layout.feedback = true;
  const int delay =
      static_cast<int>(std::lround(config.extraction_delay_ms * scene.fs / 1e3));
  if (use_bf) {
    tr.layout.bf_mics = config.bf_mics;
    tr.layout.bf_L = config.bf_L > 0 ? config.bf_L : scene.L;
    tr.layout.injection_gain = gain;
    if (config.kind == BaselineKind::kPartiallyCoupled) {
      tr.layout.injection = InjectionMode::kErrorOffset;
      tr.layout.injection_delay = delay;
    } else {
      int gd = 0;
      while (gd < scene.g.size() && scene.g.taps[gd] == 0.0) ++gd;
      tr.layout.injection = InjectionMode::kSecondary;
      tr.layout.injection_delay = std::max(0, delay - gd);
    }
  }

  std::unique_ptr<FrostBeamformer> bf;
  if (use_bf) {
    FrostConfig fc;
    fc.L = tr.layout.bf_L;
    for (int k : config.bf_mics) {
      std::vector<double> taps = scene.reirs[k].taps;
      taps.resize(fc.L, 0.0);
      fc.reirs.emplace_back(std::move(taps), scene.fs);
    }
    fc.target = scene.reirs[scene.error_mic].taps;
    fc.mu = config.bf_mu;
    bf = std::make_unique<FrostBeamformer>(fc);
  }

  std::vector<std::vector<double>> refs_sig;
  for (int k : config.anc_mics) refs_sig.push_back(scene.Mic(k));
  std::vector<std::vector<double>> bf_sig;
  for (int k : tr.layout.bf_mics) bf_sig.push_back(scene.Mic(k));

  tr.d.assign(scene.d.begin(), scene.d.begin() + duration);
  const auto& g = scene.g.taps;
  const double limit = DivergenceThreshold(tr.d);
  SnapshotRecorder snaps(hop, duration);
  std::vector<double> refs(refs_sig.size());
  std::vector<double> frame(bf_sig.size());
  std::vector<double> z(duration, 0.0);
  std::vector<double> inj(duration, 0.0);
  const Eigen::VectorXd empty;
  try {
    for (int n = 0; n < duration; ++n) {
      double e = scene.d[n];
      for (size_t m = 1; m < g.size() && m <= static_cast<size_t>(n); ++m) {
        e += g[m] * tr.y[n - m];
      }
      if (!std::isfinite(e) || std::abs(e) > limit) {
        throw Error(ErrorCode::kDivergence,
                    "|e| exceeded 1e6 RMS(d) at sample " + std::to_string(n));
      }
      if (snaps.Due(n)) snaps.Take(n, ctl.w(), bf ? &bf->b() : nullptr, tr);
      double offset = 0.0;
      double injection = 0.0;
      if (bf) {
        for (size_t i = 0; i < bf_sig.size(); ++i) frame[i] = bf_sig[i][n];
        z[n] = bf->Step(frame.data());
        const int D = tr.layout.injection_delay;
        const double zd = n >= D ? gain * z[n - D] : 0.0;
        if (tr.layout.injection == InjectionMode::kErrorOffset) {
          offset = zd;
        } else {
          inj[n] = zd;
          injection = zd;
          for (size_t m = 0; m < g.size() && m <= static_cast<size_t>(n); ++m) {
            offset += g[m] * inj[n - m];
          }
        }
      }
      for (size_t j = 0; j < refs.size(); ++j) refs[j] = refs_sig[j][n];
      const double y = ctl.Step(refs.data(), e, offset, injection);
      tr.e.push_back(e);
      tr.y.push_back(y + injection);
      tr.mu.push_back(ctl.mu());
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kDivergence) throw;
    tr.diverged = true;
    tr.diagnostic = err.what();
    tr.d.resize(tr.e.size());
  }
  snaps.Finish(static_cast<int>(tr.e.size()), ctl.w(), bf ? &bf->b() : nullptr,
               tr);
  return tr;
}

SimulationTrace RunPartiallyCoupled(const RenderedScene& scene,
                                    const BaselineConfig& config,
                                    const VssParams& vss, int duration, int hop) {
  if (config.kind != BaselineKind::kPartiallyCoupled) {
    throw Error(ErrorCode::kConfiguration, "config kind is not partially_coupled");
  }
  return RunBaseline(scene, config, vss, duration, hop);
}

SimulationTrace RunDecoupled(const RenderedScene& scene,
                             const BaselineConfig& config, const VssParams& vss,
                             int duration, int hop) {
  if (config.kind != BaselineKind::kDecoupled) {
    throw Error(ErrorCode::kConfiguration, "config kind is not decoupled");
  }
  return RunBaseline(scene, config, vss, duration, hop);
}

double StabilityBoundary(const RenderedScene& scene, const BaselineConfig& config,
                         double lo, double hi, int iterations, int duration) {
  auto stable = [&](double mu) {
    const auto tr = RunBaseline(scene, config, VssParams::Fixed(mu), duration,
                                std::max(1, duration / 10));
    if (tr.diverged) return false;
    const int n = tr.length();
    return MeanSquare(tr.e, n - n / 4, n) < 10.0 * MeanSquare(tr.d, n - n / 4, n);
  };
  if (!stable(lo)) return 0.0;
  if (stable(hi)) return hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = std::sqrt(lo * hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace sanc
