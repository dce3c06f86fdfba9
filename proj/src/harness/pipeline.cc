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

#include "sanc/harness/pipeline.h"

#include <cmath>

#include "sanc/baselines/configurations.h"
#include "sanc/dsp/filters.h"
#include "sanc/error.h"
#include "sanc/metrics/decouple.h"

namespace sanc {

ControllerKind ParseControllerKind(const std::string& name) {
  if (name == "proposed_optimal") return ControllerKind::kProposedOptimal;
  if (name == "proposed_adaptive") return ControllerKind::kProposedAdaptive;
  if (name == "unconstrained") return ControllerKind::kUnconstrained;
  if (name == "partially_coupled") return ControllerKind::kPartiallyCoupled;
  if (name == "decoupled") return ControllerKind::kDecoupled;
  throw Error(ErrorCode::kConfiguration, "unknown controller '" + name + "'");
}

std::string ControllerKindName(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kProposedOptimal: return "proposed_optimal";
    case ControllerKind::kProposedAdaptive: return "proposed_adaptive";
    case ControllerKind::kUnconstrained: return "unconstrained";
    case ControllerKind::kPartiallyCoupled: return "partially_coupled";
    case ControllerKind::kDecoupled: return "decoupled";
  }
  return "unknown";
}

PipelineConfig DefaultPipelineConfig(double fs, double step_scale) {
  PipelineConfig c;
  c.vss = VssParams::Paper().RescaledFor(fs).StepScaled(step_scale);
  c.bands = {{20.0, 140.0}, {140.0, 500.0}, {500.0, 1000.0}, {1000.0, 2000.0},
             {2000.0, std::min(4000.0, fs / 2.0)}};
  return c;
}

ProposedSetup BuildProposedSetup(const RenderedScene& scene,
                                 const ConstraintOptions& options) {
  const int span = options.span > 0 ? options.span
                                    : FullConstraintSpan(scene.reirs, scene.L);
  ProposedSetup s;
  s.constraint =
      BuildConstraint(scene.reirs, scene.error_mic, scene.ref_mic, scene.L, span);
  if (options.weighting) {
    const int len =
        options.weighting_length > 0 ? options.weighting_length : scene.L;
    s.constraint = ApplySpectralWeighting(
        s.constraint,
        MinPhaseHighpass(options.weighting_cutoff_hz, scene.fs, len));
  }
  double gamma = options.gamma;
  if (options.gamma_ratio > 0.0) {
    gamma = EigRelativeGamma(s.constraint, scene.g, options.gamma_ratio);
  }
  s.projection = std::make_shared<ProjectionPair>(BuildProjection(
      s.constraint, scene.g, gamma,
      options.pseudoinverse ? InverseMode::kPseudoinverse
                            : InverseMode::kRegularized));
  return s;
}

std::vector<std::vector<double>> StackedChannels(const RenderedScene& scene) {
  std::vector<std::vector<double>> ch;
  for (int k : scene.geometry.ChannelOrder()) {
    if (k == scene.error_mic) {
      ch.push_back(scene.d);
    } else {
      ch.push_back(scene.Mic(k));
    }
  }
  return ch;
}

OptimalSolution SolveProposedOptimal(const RenderedScene& scene,
                                     const PipelineConfig& config,
                                     const ProposedSetup& setup) {
  const auto stats = AccumulateStats(StackedChannels(scene), scene.d, scene.g,
                                     scene.L, config.stats_warmup);
  SolverOptions opt;
  if (config.solver.rule == RegularizationRule::kFixed) {
    opt.beta = config.solver.beta;
    opt.rho = config.solver.rho;
    opt.pseudoinverse = opt.beta == 0.0 || opt.rho == 0.0;
  } else {
    opt = ChooseRegularization(stats, scene.g, setup.constraint,
                               config.solver.rule, config.solver.ratio,
                               scene.sensor_noise_power);
  }
  return SolveOptimal(stats, scene.g, setup.constraint, opt);
}

SystemResult RunSystem(ControllerKind kind, const RenderedScene& scene,
                       const PipelineConfig& config) {
  SystemResult r;
  r.kind = kind;
  const int N = scene.length();
  const int hop = std::max(1, static_cast<int>(std::lround(config.hop_s * scene.fs)));
  SimulationTrace tr;
  switch (kind) {
    case ControllerKind::kProposedOptimal: {
      const auto setup = BuildProposedSetup(scene, config.constraint);
      r.solution = SolveProposedOptimal(scene, config, setup);
      std::vector<std::vector<double>> mix(scene.num_mics());
      for (int k = 0; k < scene.num_mics(); ++k) mix[k] = scene.Mic(k);
      mix[scene.error_mic] = scene.d;
      r.e = FixedFilterResidual(r.solution->w, scene, mix, &r.y);
      r.e_s = FixedFilterResidual(r.solution->w, scene, scene.desired);
      r.v_anc = FixedFilterResidual(r.solution->w, scene, scene.noise);
      return r;
    }
    case ControllerKind::kProposedAdaptive: {
      const auto setup = BuildProposedSetup(scene, config.constraint);
      ControllerConfig cc;
      cc.L = scene.L;
      cc.num_refs = scene.num_mics() - 1;
      cc.feedback = true;
      cc.g_hat = scene.g;
      cc.projection = setup.projection;
      cc.vss = config.vss;
      cc.projection_stride = config.projection_stride;
      tr = RunClosedLoop(scene, cc, N, hop);
      break;
    }
    case ControllerKind::kUnconstrained:
      tr = RunUnconstrained(scene, config.vss, N, hop);
      break;
    case ControllerKind::kPartiallyCoupled:
    case ControllerKind::kDecoupled: {
      const BaselineKind bk = kind == ControllerKind::kPartiallyCoupled
                                  ? BaselineKind::kPartiallyCoupled
                                  : BaselineKind::kDecoupled;
      BaselineConfig bc = config.baseline && config.baseline->kind == bk
                              ? *config.baseline
                              : BaselineConfig::Default(bk, scene.geometry);
      tr = RunBaseline(scene, bc, config.vss, N, hop);
      break;
    }
  }
  r.diverged = tr.diverged;
  r.diagnostic = tr.diagnostic;
  r.e = tr.e;
  r.y = tr.y;
  const auto dec = DecoupleComponents(tr, scene);
  r.e_s = dec.e_s;
  r.v_anc = dec.v_anc;
  r.trace = std::move(tr);
  return r;
}

SummaryMetrics Summarize(const SystemResult& r, const RenderedScene& scene,
                         const PipelineConfig& config) {
  SummaryMetrics m;
  const int N = static_cast<int>(r.e.size());
  if (N < 4) throw Error(ErrorCode::kInsufficientData, "run too short");
  m.window = DefaultWindow(N);
  const std::vector<double> s(scene.s().begin(), scene.s().begin() + N);
  const std::vector<double> v(scene.v().begin(), scene.v().begin() + N);
  const std::vector<double> d(scene.d.begin(), scene.d.begin() + N);
  if (MeanSquare(v, m.window.begin, m.window.end) > 0.0) {
    m.nr = NoiseReduction(v, r.v_anc, m.window);
    m.band_nr = BandNr(v, r.v_anc, config.bands, scene.fs, m.window);
  } else {
    m.nr.flag = "undefined";
  }
  if (MeanSquare(s, m.window.begin, m.window.end) > 0.0) {
    m.sdi = Sdi(s, r.e_s, m.window, config.sdi_highpass_hz, scene.fs);
    m.sdi_raw = Sdi(s, r.e_s, m.window);
  } else {
    m.sdi.flag = m.sdi_raw.flag = "undefined";
  }
  const double pd = MeanSquare(d, m.window.begin, m.window.end);
  m.energy_ratio =
      pd > 0.0 ? MeanSquare(r.y, m.window.begin, m.window.end) / pd : 0.0;
  return m;
}

}  // namespace sanc
