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

#ifndef SANC_ADAPTIVE_VSS_H_
#define SANC_ADAPTIVE_VSS_H_

namespace sanc {

struct VssParams {
  double mu_max = 1e-4;
  double mu_min = 8e-6;
  double alpha = 0.99998;
  double gamma = 1e-5;
  double beta = 0.99999;
  // Fixed step size when false (mu = mu_max).
  bool enabled = true;

  void Validate() const;
  // Parameter set quoted for 48 kHz operation.
  static VssParams Paper();
  // Keeps the time constants of alpha/beta (in seconds) and the equilibrium
  // gamma / (1 - alpha) when moving from 48 kHz to fs.
  VssParams RescaledFor(double fs) const;
  // Multiplies mu_max and mu_min by k.
  VssParams StepScaled(double k) const;
  static VssParams Fixed(double mu);
};

struct VssState {
  double mu = 0.0;
  double p = 0.0;
  double e_prev = 0.0;
};

VssState InitVss(const VssParams& params);

// p(n) = beta p(n-1) + (1-beta) e(n) e(n-1);
// mu(n+1) = clamp(alpha mu(n) + gamma p(n)^2, mu_min, mu_max).
double VssUpdate(const VssParams& params, VssState& state, double e);

}  // namespace sanc

#endif  // SANC_ADAPTIVE_VSS_H_
