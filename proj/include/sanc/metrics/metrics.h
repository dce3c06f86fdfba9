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

#ifndef SANC_METRICS_METRICS_H_
#define SANC_METRICS_METRICS_H_

#include <string>
#include <utility>
#include <vector>

namespace sanc {

constexpr double kDbLimit = 120.0;

struct Window {
  int begin = 0;
  int end = 0;
};

// Last quarter of a record of length n.
Window DefaultWindow(int n);

struct MetricValue {
  double db = 0.0;
  // "", "capped", "floored" or "undefined".
  std::string flag;
};

// 10 log10(E{v^2} / E{v_anc^2}).
MetricValue NoiseReduction(const std::vector<double>& v,
                           const std::vector<double>& v_anc, Window w);

// 10 log10(E{(s - e_s)^2} / E{s^2}); highpass_hz > 0 applies the same
// zero-phase 4th-order high-pass to both signals first.
MetricValue Sdi(const std::vector<double>& s, const std::vector<double>& e_s,
                Window w, double highpass_hz = 0.0, double fs = 0.0);

// 100 E{y^2} / E{y_ref^2}.
double RelativeEnergy(const std::vector<double>& y,
                      const std::vector<double>& y_ref, Window w);

using Band = std::pair<double, double>;

// NR of zero-phase band-passed components; bands reaching fs/2 drop the
// low-pass section.
std::vector<MetricValue> BandNr(const std::vector<double>& v,
                                const std::vector<double>& v_anc,
                                const std::vector<Band>& bands, double fs,
                                Window w);

// Lag (samples, in [-max_lag, max_lag]) maximizing the signed correlation
// sum_n ref(n) sig(n + lag) over the window.
int EstimateLag(const std::vector<double>& ref, const std::vector<double>& sig,
                int max_lag, Window w);

double ToDb(double ratio);

}  // namespace sanc

#endif  // SANC_METRICS_METRICS_H_
