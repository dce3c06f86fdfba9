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

#ifndef SANC_DSP_SPECTRUM_H_
#define SANC_DSP_SPECTRUM_H_

#include <string>
#include <vector>

#include "sanc/dsp/signal.h"

namespace sanc {

// One-sided power spectral density (power per Hz).
struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> power;
  double bin_width = 0.0;

  double Integrate() const;
};

Spectrum WelchPsd(const Signal& x, int nfft);

// Header "frequency_hz,power_db".
void WriteSpectrumCsv(const std::string& path, const Spectrum& s);

// Least-squares slope of 10log10(PSD) against log2(f) over [f_lo, f_hi].
double FitSlopeDbPerOctave(const Spectrum& s, double f_lo, double f_hi);

}  // namespace sanc

#endif  // SANC_DSP_SPECTRUM_H_
