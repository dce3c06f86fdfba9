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

#ifndef SANC_HARNESS_EXPERIMENT_H_
#define SANC_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sanc/harness/pipeline.h"
#include "sanc/scene/scene.h"

namespace sanc {

constexpr int kExperimentSchemaVersion = 1;

enum class Profile { kDesk, kPaper };
Profile ParseProfile(const std::string& name);
std::string ProfileName(Profile p);

enum class SweepAxis { kNone, kDoa, kSsnr, kSnr };
SweepAxis ParseSweepAxis(const std::string& name);
std::string SweepAxisName(SweepAxis a);

struct ExperimentSpec {
  AcousticScene scene;
  std::vector<ControllerKind> controllers{ControllerKind::kProposedAdaptive};
  double duration_s = 10.0;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> sweep_values;
  std::vector<uint64_t> seeds{1};
  std::string output_dir;
  PipelineConfig pipeline;
  // Extra eigenvalue-ratio points for the robustness sweep.
  std::vector<double> ratio_grid;
  Profile profile = Profile::kDesk;

  int DurationSamples() const;
  void Validate() const;
  // Fully resolved configuration; its hash tags every output row.
  nlohmann::json ToJson() const;
  std::string Hash() const;
};

// Keys: version, profile, scene | scene_file, controller (string or list),
// duration_s, hop_s, seed | seeds, sweep {axis, values}, output_dir,
// constraint, solver, adaptive, metrics, robustness. scene_file is resolved
// against base_dir. A profile key in the file must match a requested
// profile; without either the desk profile applies.
ExperimentSpec ParseExperimentJson(const nlohmann::json& j,
                                   const std::string& base_dir,
                                   std::optional<Profile> profile = std::nullopt);
ExperimentSpec LoadExperimentFile(const std::string& path,
                                  std::optional<Profile> profile = std::nullopt);

// fs 48 kHz, L 768, secondary delay 10, bulk delay 48.
void ApplyPaperProfile(AcousticScene& scene);

// Scenario seed s: desired s*100+1, noise i s*100+2+i, sensor noise s*100+50.
AcousticScene SeededScene(const AcousticScene& scene, uint64_t seed);

uint64_t Fnv1a64(const std::string& data);

// Runs fn(0..n-1) on up to jobs threads. Rethrows the lowest-index failure.
void ParallelFor(int n, int jobs, const std::function<void(int)>& fn);

struct ScenarioPoint {
  uint64_t seed = 1;
  std::optional<double> sweep_value;
  AcousticScene scene;
};

// seeds x sweep values, with the sweep applied to the scene (doa moves the
// first noise source, ssnr sets sensor noise, snr the a priori SNR).
std::vector<ScenarioPoint> ExpandScenarios(const ExperimentSpec& spec);

// Default sensor-noise layout used when the scene has none.
SensorNoiseSpec DefaultSensorNoise(const AcousticScene& scene);

struct RunResult {
  std::string scenario_id;
  uint64_t seed = 1;
  std::optional<double> sweep_value;
  ControllerKind kind;
  std::vector<double> d;  // uncontrolled disturbance, trace length
  SystemResult system;
  SummaryMetrics metrics;
};

std::vector<RunResult> RunExperiment(const ExperimentSpec& spec, int jobs);

struct DirectivityRow {
  double angle_deg = 0.0;
  Band band{0.0, 0.0};  // {0, fs/2} for the broadband value
  MetricValue nr;
  uint64_t seed = 1;
};

std::vector<DirectivityRow> DirectivitySweep(const ExperimentSpec& spec,
                                             int jobs);

struct RobustnessRow {
  double ssnr_db = 0.0;
  std::string rule;  // "eig_ratio", "sensor_noise" or "eig_grid"
  double ratio = 0.0;
  MetricValue nr;
  MetricValue sdi;
  double beta = 0.0;
  double rho = 0.0;
  uint64_t seed = 1;
};

std::vector<RobustnessRow> RobustnessSweep(const ExperimentSpec& spec, int jobs);

struct CompareRow {
  double snr_db = 0.0;
  std::string system;
  double energy = 0.0;      // E{y^2} over the metric window
  double energy_pct = 0.0;  // relative to the partially coupled system
  MetricValue nr;
  MetricValue sdi;
  int lag = 0;  // lag of the residual desired component against s
  bool diverged = false;
  std::string diagnostic;
  uint64_t seed = 1;
};

std::vector<CompareRow> CompareSweep(const ExperimentSpec& spec, int jobs);

}  // namespace sanc

#endif  // SANC_HARNESS_EXPERIMENT_H_
