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

#ifndef SANC_METRICS_DECOUPLE_H_
#define SANC_METRICS_DECOUPLE_H_

#include <vector>

#include "sanc/adaptive/closed_loop.h"
#include "sanc/scene/scene.h"

namespace sanc {

struct ComponentDecomposition {
  std::vector<double> e_s;
  std::vector<double> v_anc;
};

// Re-runs the configuration with every adaptive filter held at its snapshot
// over the snapshot's validity range, once with desired-only and once with
// noise-only inputs.
ComponentDecomposition DecoupleComponents(const SimulationTrace& trace,
                                          const RenderedScene& scene);

// Frozen re-run for arbitrary per-mic inputs; d is the disturbance at the
// error mic for the same component.
std::vector<double> FrozenResidual(const SimulationTrace& trace,
                                   const RenderedScene& scene,
                                   const std::vector<std::vector<double>>& mics,
                                   const std::vector<double>& d);

// Frozen re-run with one fixed filter for the whole record.
std::vector<double> FixedFilterResidual(const Eigen::VectorXd& w,
                                        const RenderedScene& scene,
                                        const std::vector<std::vector<double>>& mics,
                                        std::vector<double>* y = nullptr);

}  // namespace sanc

#endif  // SANC_METRICS_DECOUPLE_H_
