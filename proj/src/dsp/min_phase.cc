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

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "sanc/dsp/filters.h"
#include "sanc/error.h"

namespace sanc {
namespace {

constexpr double kPrototypeBeta = 3.4;
constexpr double kLogFloor = 1e-9;
constexpr double kMaxZeroRadius = 1.0 - 1e-4;

std::vector<double> LinearPhaseHighpass(double cutoff, double fs, int n) {
  const double fc = cutoff / fs;
  const double mid = (n - 1) / 2.0;
  std::vector<double> h(n);
  double dc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = i - mid;
    const double lp = x == 0.0 ? 2.0 * fc
                               : std::sin(2.0 * std::numbers::pi * fc * x) /
                                     (std::numbers::pi * x);
    h[i] = lp * KaiserWindow(x, mid + 1.0, kPrototypeBeta);
    dc += h[i];
  }
  // Spectral inversion of a unit-DC low-pass.
  for (int i = 0; i < n; ++i) h[i] = -h[i] / dc;
  h[static_cast<int>(mid)] += 1.0;
  return h;
}

}  // namespace

ImpulseResponse MinPhaseHighpass(double cutoff, double fs, int length) {
  if (!(cutoff > 0.0) || !(cutoff < fs / 2.0)) {
    throw Error(ErrorCode::kConfiguration, "cutoff outside (0, fs/2)");
  }
  if (length < 3) throw Error(ErrorCode::kInvalidDimension, "length < 3");
  const int n = (length % 2 == 1) ? length : length - 1;
  const std::vector<double> proto = LinearPhaseHighpass(cutoff, fs, n);

  int nfft = 1;
  while (nfft < 64 * length) nfft <<= 1;
  Eigen::FFT<double> fft;
  std::vector<double> padded(nfft, 0.0);
  std::copy(proto.begin(), proto.end(), padded.begin());
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, padded);

  double peak = 0.0;
  for (const auto& v : spec) peak = std::max(peak, std::abs(v));
  std::vector<std::complex<double>> logmag(nfft);
  for (int k = 0; k < nfft; ++k) {
    logmag[k] = std::log(std::max(std::abs(spec[k]), kLogFloor * peak));
  }
  std::vector<std::complex<double>> cep;
  fft.inv(cep, logmag);
  // Fold the real cepstrum onto positive quefrencies.
  std::vector<std::complex<double>> folded(nfft, 0.0);
  folded[0] = cep[0].real();
  for (int k = 1; k < nfft / 2; ++k) folded[k] = 2.0 * cep[k].real();
  folded[nfft / 2] = cep[nfft / 2].real();
  std::vector<std::complex<double>> logmin;
  fft.fwd(logmin, folded);
  for (auto& v : logmin) v = std::exp(v);
  std::vector<std::complex<double>> hmin;
  fft.inv(hmin, logmin);

  std::vector<double> taps(length, 0.0);
  for (int i = 0; i < n; ++i) taps[i] = hmin[i].real();
  // Truncation leaves a few zeros just outside the unit circle; pull them in.
  for (int iter = 0; iter < 8; ++iter) {
    const double rmax = MaxZeroMagnitude(taps);
    if (rmax <= kMaxZeroRadius) break;
    const double r = kMaxZeroRadius / rmax;
    double g = 1.0;
    for (double& t : taps) {
      t *= g;
      g *= r;
    }
  }
  return ImpulseResponse(std::move(taps), fs);
}

}  // namespace sanc
