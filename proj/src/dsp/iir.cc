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

#include "sanc/dsp/iir.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sanc/error.h"

namespace sanc {
namespace {

SosFilter Butterworth(int order, double cutoff, double fs, bool highpass) {
  if (order < 1) throw Error(ErrorCode::kConfiguration, "order < 1");
  if (!(cutoff > 0.0) || !(cutoff < fs / 2.0)) {
    throw Error(ErrorCode::kConfiguration, "cutoff outside (0, fs/2)");
  }
  const double k = std::tan(std::numbers::pi * cutoff / fs);
  SosFilter sos;
  for (int i = 0; i < order / 2; ++i) {
    const double q =
        1.0 / (2.0 * std::sin((2 * i + 1) * std::numbers::pi / (2.0 * order)));
    const double norm = 1.0 / (1.0 + k / q + k * k);
    Biquad b{};
    if (highpass) {
      b.b0 = norm;
      b.b1 = -2.0 * norm;
    } else {
      b.b0 = k * k * norm;
      b.b1 = 2.0 * b.b0;
    }
    b.b2 = b.b0;
    b.a1 = 2.0 * (k * k - 1.0) * norm;
    b.a2 = (1.0 - k / q + k * k) * norm;
    sos.push_back(b);
  }
  if (order % 2 == 1) {
    Biquad b{};
    if (highpass) {
      b.b0 = 1.0 / (1.0 + k);
      b.b1 = -b.b0;
    } else {
      b.b0 = k / (1.0 + k);
      b.b1 = b.b0;
    }
    b.a1 = (k - 1.0) / (k + 1.0);
    sos.push_back(b);
  }
  return sos;
}

}  // namespace

SosFilter ButterworthLowpass(int order, double cutoff, double fs) {
  return Butterworth(order, cutoff, fs, false);
}

SosFilter ButterworthHighpass(int order, double cutoff, double fs) {
  return Butterworth(order, cutoff, fs, true);
}

std::vector<double> SosFilterSignal(const SosFilter& sos,
                                    const std::vector<double>& x) {
  std::vector<double> y = x;
  for (const Biquad& b : sos) {
    // Transposed direct form II.
    double z1 = 0.0, z2 = 0.0;
    for (double& v : y) {
      const double in = v;
      const double out = b.b0 * in + z1;
      z1 = b.b1 * in - b.a1 * out + z2;
      z2 = b.b2 * in - b.a2 * out;
      v = out;
    }
  }
  return y;
}

std::vector<double> FiltFilt(const SosFilter& sos, const std::vector<double>& x,
                             int padlen) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return {};
  padlen = std::clamp(padlen, 0, n - 1);
  std::vector<double> ext(n + 2 * padlen);
  for (int i = 0; i < padlen; ++i) {
    ext[i] = 2.0 * x[0] - x[padlen - i];
    ext[n + padlen + i] = 2.0 * x[n - 1] - x[n - 2 - i];
  }
  std::copy(x.begin(), x.end(), ext.begin() + padlen);
  ext = SosFilterSignal(sos, ext);
  std::reverse(ext.begin(), ext.end());
  ext = SosFilterSignal(sos, ext);
  std::reverse(ext.begin(), ext.end());
  return std::vector<double>(ext.begin() + padlen, ext.begin() + padlen + n);
}

std::vector<double> ZeroPhaseBand(const std::vector<double>& x, double f_lo,
                                  double f_hi, double fs) {
  SosFilter sos;
  double fmin = fs / 2.0;
  if (f_lo > 0.0) {
    sos = ButterworthHighpass(4, f_lo, fs);
    fmin = f_lo;
  }
  if (f_hi > 0.0) {
    const SosFilter lp = ButterworthLowpass(4, f_hi, fs);
    sos.insert(sos.end(), lp.begin(), lp.end());
    fmin = std::min(fmin, f_hi);
  }
  if (sos.empty()) return x;
  const int padlen = static_cast<int>(std::ceil(3.0 * fs / fmin));
  return FiltFilt(sos, x, padlen);
}

}  // namespace sanc
