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

#ifndef SANC_BASELINES_CONFIGURATIONS_H_
#define SANC_BASELINES_CONFIGURATIONS_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "sanc/adaptive/closed_loop.h"
#include "sanc/adaptive/vss.h"
#include "sanc/scene/scene.h"

namespace sanc {

enum class BaselineKind { kUnconstrainedHybrid, kPartiallyCoupled, kDecoupled };

BaselineKind ParseBaselineKind(const std::string& name);
std::string BaselineKindName(BaselineKind kind);

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kPartiallyCoupled;
  std::vector<int> anc_mics;  // reference mics (error mic feedback is implied)
  std::vector<int> bf_mics;
  double extraction_delay_ms = 1.0;
  // -infinity mutes the extracted signal.
  double extraction_gain_db = 0.0;
  int bf_L = 0;  // 0 selects the scene's L
  double bf_mu = 0.05;

  // Paper-analogue defaults for the glasses geometry: beamformer on mics 1
  // and 3, decoupled ANC references 0 and 2; other geometries take every
  // non-error mic.
  static BaselineConfig Default(BaselineKind kind, const ArrayGeometry& g);
  void Validate(const ArrayGeometry& g) const;
  double gain() const;
};

// Keys: kind, anc_mics, bf_mics, extraction_delay_ms, extraction_gain_db
// (null mutes), bf_length, bf_mu.
BaselineConfig ParseBaselineJson(const nlohmann::json& j,
                                 const ArrayGeometry& g);

// Traditional hybrid FxLMS: P = I, q = 0, w(0) = 0, all non-error mics.
SimulationTrace RunUnconstrained(const RenderedScene& scene, const VssParams& vss,
                                 int duration, int hop);

SimulationTrace RunBaseline(const RenderedScene& scene,
                            const BaselineConfig& config, const VssParams& vss,
                            int duration, int hop);
SimulationTrace RunPartiallyCoupled(const RenderedScene& scene,
                                    const BaselineConfig& config,
                                    const VssParams& vss, int duration, int hop);
SimulationTrace RunDecoupled(const RenderedScene& scene,
                             const BaselineConfig& config, const VssParams& vss,
                             int duration, int hop);

// Largest fixed step size (bisection in log scale between lo and hi) for
// which the configuration does not diverge within duration samples.
double StabilityBoundary(const RenderedScene& scene, const BaselineConfig& config,
                         double lo, double hi, int iterations, int duration);

}  // namespace sanc

#endif  // SANC_BASELINES_CONFIGURATIONS_H_
