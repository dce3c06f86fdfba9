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

#ifndef SANC_DSP_SIGNAL_H_
#define SANC_DSP_SIGNAL_H_

#include <vector>

namespace sanc {

// Finite tap sequence; holds ReIRs, secondary paths and weighting filters.
struct ImpulseResponse {
  std::vector<double> taps;
  double sample_rate = 0.0;

  ImpulseResponse() = default;
  ImpulseResponse(std::vector<double> t, double fs)
      : taps(std::move(t)), sample_rate(fs) {}

  int size() const { return static_cast<int>(taps.size()); }
  // Throws kInvalidDimension / kNumerical when invariants fail.
  void Validate() const;
};

struct Signal {
  std::vector<double> samples;
  double sample_rate = 0.0;

  Signal() = default;
  Signal(std::vector<double> s, double fs)
      : samples(std::move(s)), sample_rate(fs) {}

  int size() const { return static_cast<int>(samples.size()); }
  void Validate() const;
};

double MeanSquare(const std::vector<double>& x, int begin, int end);
double MeanSquare(const std::vector<double>& x);

}  // namespace sanc

#endif  // SANC_DSP_SIGNAL_H_
