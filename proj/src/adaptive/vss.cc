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

#include "sanc/adaptive/vss.h"

#include <algorithm>
#include <cmath>

#include "sanc/error.h"

namespace sanc {

void VssParams::Validate() const {
  // A fixed step of zero freezes the filter.
  const bool mu_ok = enabled ? mu_max > 0.0 : mu_max >= 0.0;
  if (!mu_ok || !(mu_min >= 0.0) || mu_min > mu_max) {
    throw Error(ErrorCode::kConfiguration, "VSS step-size bounds");
  }
  if (enabled && (!(alpha > 0.0) || !(alpha < 1.0) || !(beta > 0.0) ||
                  !(beta < 1.0) || !(gamma > 0.0))) {
    throw Error(ErrorCode::kConfiguration, "VSS parameters");
  }
}

VssParams VssParams::Paper() { return VssParams{}; }

VssParams VssParams::Fixed(double mu) {
  VssParams p;
  p.mu_max = mu;
  p.mu_min = mu;
  p.enabled = false;
  return p;
}

VssParams VssParams::RescaledFor(double fs) const {
  VssParams p = *this;
  const double k = 48000.0 / fs;
  p.alpha = std::pow(alpha, k);
  p.beta = std::pow(beta, k);
  p.gamma = gamma * (1.0 - p.alpha) / (1.0 - alpha);
  return p;
}

VssParams VssParams::StepScaled(double k) const {
  VssParams p = *this;
  p.mu_max *= k;
  p.mu_min *= k;
  return p;
}

VssState InitVss(const VssParams& params) {
  VssState s;
  s.mu = params.mu_max;
  return s;
}

double VssUpdate(const VssParams& params, VssState& state, double e) {
  if (!params.enabled) {
    state.mu = params.mu_max;
    return state.mu;
  }
  state.p = params.beta * state.p + (1.0 - params.beta) * e * state.e_prev;
  state.e_prev = e;
  state.mu = std::clamp(params.alpha * state.mu + params.gamma * state.p * state.p,
                        params.mu_min, params.mu_max);
  return state.mu;
}

}  // namespace sanc
