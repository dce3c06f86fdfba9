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

#ifndef SANC_DSP_FILTERS_H_
#define SANC_DSP_FILTERS_H_

#include <complex>
#include <vector>

#include "sanc/dsp/signal.h"

namespace sanc {

// Zero initial state, output length equals input length.
Signal FirFilter(const ImpulseResponse& ir, const Signal& x);
std::vector<double> FirFilter(const std::vector<double>& taps,
                              const std::vector<double>& x);

// Full linear convolution, length a + b - 1.
std::vector<double> Convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

// Frequency response of an FIR filter at normalized frequency omega (rad).
std::complex<double> FreqResponse(const std::vector<double>& taps,
                                  double omega);

// Roots of sum_n taps[n] z^{-n}, i.e. of the polynomial with coefficients
// taps[0] z^{N-1} + ... + taps[N-1]. Trailing zero taps are ignored.
std::vector<std::complex<double>> TransferZeros(
    const std::vector<double>& taps);
double MaxZeroMagnitude(const std::vector<double>& taps);

// Kaiser-windowed sinc kernel centered at delay. Half-width of the window in
// samples.
constexpr int kFractionalDelayHalfWidth = 16;
constexpr double kFractionalDelayKaiserBeta = 5.0;
ImpulseResponse FractionalDelayIr(double delay, int length, double fs,
                                  int half_width = kFractionalDelayHalfWidth);

// Minimum-phase FIR high-pass from a linear-phase prototype via real-cepstrum
// folding.
ImpulseResponse MinPhaseHighpass(double cutoff, double fs, int length);

double KaiserWindow(double x, double half_width, double beta);
double BesselI0(double x);

}  // namespace sanc

#endif  // SANC_DSP_FILTERS_H_
