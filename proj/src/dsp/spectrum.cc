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

#include "sanc/dsp/spectrum.h"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "sanc/error.h"

namespace sanc {

double Spectrum::Integrate() const {
  double acc = 0.0;
  for (double p : power) acc += p * bin_width;
  return acc;
}

Spectrum WelchPsd(const Signal& x, int nfft) {
  if (nfft < 2 || nfft % 2 != 0) {
    throw Error(ErrorCode::kInvalidDimension, "nfft must be even and >= 2");
  }
  if (x.size() < nfft) {
    throw Error(ErrorCode::kInvalidDimension, "signal shorter than nfft");
  }
  const double fs = x.sample_rate;
  std::vector<double> win(nfft);
  double wss = 0.0;
  for (int i = 0; i < nfft; ++i) {
    win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / nfft);
    wss += win[i] * win[i];
  }
  const int hop = nfft / 2;
  const int segments = (x.size() - nfft) / hop + 1;
  Spectrum out;
  out.bin_width = fs / nfft;
  out.freqs.resize(nfft / 2 + 1);
  out.power.assign(nfft / 2 + 1, 0.0);
  for (int k = 0; k <= nfft / 2; ++k) out.freqs[k] = k * out.bin_width;

  Eigen::FFT<double> fft;
  std::vector<double> frame(nfft);
  std::vector<std::complex<double>> bins;
  for (int s = 0; s < segments; ++s) {
    const int start = s * hop;
    double mean = 0.0;
    for (int i = 0; i < nfft; ++i) mean += x.samples[start + i];
    mean /= nfft;
    for (int i = 0; i < nfft; ++i) {
      frame[i] = (x.samples[start + i] - mean) * win[i];
    }
    fft.fwd(bins, frame);
    for (int k = 0; k <= nfft / 2; ++k) {
      double p = std::norm(bins[k]) / (fs * wss);
      if (k != 0 && k != nfft / 2) p *= 2.0;
      out.power[k] += p;
    }
  }
  for (double& p : out.power) p /= segments;
  return out;
}

void WriteSpectrumCsv(const std::string& path, const Spectrum& s) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << "frequency_hz,power_db\n";
  char buf[96];
  for (size_t k = 0; k < s.freqs.size(); ++k) {
    const double db = 10.0 * std::log10(std::max(s.power[k], 1e-30));
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f\n", s.freqs[k], db);
    f << buf;
  }
}

double FitSlopeDbPerOctave(const Spectrum& s, double f_lo, double f_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t k = 0; k < s.freqs.size(); ++k) {
    const double f = s.freqs[k];
    if (f < f_lo || f > f_hi || s.power[k] <= 0.0) continue;
    const double lx = std::log2(f);
    const double ly = 10.0 * std::log10(s.power[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw Error(ErrorCode::kInsufficientData, "too few bins");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sanc
