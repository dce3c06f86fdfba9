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

#ifndef SANC_HARNESS_PIPELINE_H_
#define SANC_HARNESS_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sanc/adaptive/closed_loop.h"
#include "sanc/adaptive/vss.h"
#include "sanc/baselines/configurations.h"
#include "sanc/constraint/constraint.h"
#include "sanc/constraint/projection.h"
#include "sanc/metrics/metrics.h"
#include "sanc/optimal/solver.h"
#include "sanc/scene/scene.h"

namespace sanc {

enum class ControllerKind {
  kProposedOptimal,
  kProposedAdaptive,
  kUnconstrained,
  kPartiallyCoupled,
  kDecoupled,
};

ControllerKind ParseControllerKind(const std::string& name);
std::string ControllerKindName(ControllerKind kind);

struct ConstraintOptions {
  // 0 = full convolution span, otherwise the number of constrained lags.
  int span = 0;
  bool weighting = true;
  double weighting_cutoff_hz = 140.0;
  int weighting_length = 0;  // 0 selects L
  double gamma = 1e-4;
  // When > 0, gamma = lambda_max(A^T A) / gamma_ratio instead.
  double gamma_ratio = 0.0;
  bool pseudoinverse = false;
};

struct SolverConfig {
  RegularizationRule rule = RegularizationRule::kEigenRatio;
  double ratio = kDefaultEigRatio;
  double beta = 0.0;
  double rho = 0.0;
};

struct PipelineConfig {
  ConstraintOptions constraint;
  SolverConfig solver;
  VssParams vss;
  int projection_stride = 1;
  std::optional<BaselineConfig> baseline;
  double hop_s = 0.1;
  double sdi_highpass_hz = 100.0;
  std::vector<Band> bands;
  // Samples excluded from the statistics of the optimal solve.
  int stats_warmup = 0;
};

// Step-size scale used at desk scale (fs 8 kHz, L 128).
constexpr double kDeskStepScale = 0.4;

// Defaults at fs: VSS parameters rescaled from the 48 kHz set, step sizes
// multiplied by step_scale.
PipelineConfig DefaultPipelineConfig(double fs, double step_scale = 1.0);

struct ProposedSetup {
  SpatialConstraint constraint;
  std::shared_ptr<const ProjectionPair> projection;
};

ProposedSetup BuildProposedSetup(const RenderedScene& scene,
                                 const ConstraintOptions& options);

// Input channels (non-error mics, then the error-mic disturbance).
std::vector<std::vector<double>> StackedChannels(const RenderedScene& scene);

struct SystemResult {
  ControllerKind kind;
  std::vector<double> e;
  std::vector<double> y;
  std::vector<double> e_s;
  std::vector<double> v_anc;
  std::optional<SimulationTrace> trace;
  std::optional<OptimalSolution> solution;
  bool diverged = false;
  std::string diagnostic;
};

SystemResult RunSystem(ControllerKind kind, const RenderedScene& scene,
                       const PipelineConfig& config);

OptimalSolution SolveProposedOptimal(const RenderedScene& scene,
                                     const PipelineConfig& config,
                                     const ProposedSetup& setup);

struct SummaryMetrics {
  MetricValue nr;
  MetricValue sdi;       // high-passed
  MetricValue sdi_raw;
  double energy_ratio = 0.0;  // E{y^2} / E{d^2}
  std::vector<MetricValue> band_nr;
  Window window;
};

SummaryMetrics Summarize(const SystemResult& r, const RenderedScene& scene,
                         const PipelineConfig& config);

}  // namespace sanc

#endif  // SANC_HARNESS_PIPELINE_H_
