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

#ifndef SANC_DSP_IIR_H_
#define SANC_DSP_IIR_H_

#include <vector>

namespace sanc {

struct Biquad {
  double b0, b1, b2, a1, a2;
};

using SosFilter = std::vector<Biquad>;

SosFilter ButterworthLowpass(int order, double cutoff, double fs);
SosFilter ButterworthHighpass(int order, double cutoff, double fs);

std::vector<double> SosFilterSignal(const SosFilter& sos,
                                    const std::vector<double>& x);

// Forward-backward filtering with odd-reflection padding.
std::vector<double> FiltFilt(const SosFilter& sos, const std::vector<double>& x,
                             int padlen);

// Zero-phase 4th-order band (high-pass, low-pass or both) used by metrics.
// f_lo <= 0 skips the high-pass section, f_hi <= 0 skips the low-pass one.
std::vector<double> ZeroPhaseBand(const std::vector<double>& x, double f_lo,
                                  double f_hi, double fs);

}  // namespace sanc

#endif  // SANC_DSP_IIR_H_
