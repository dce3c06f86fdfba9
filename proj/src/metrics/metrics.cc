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

#include "sanc/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sanc/dsp/iir.h"
#include "sanc/dsp/signal.h"
#include "sanc/error.h"

namespace sanc {
namespace {

void CheckWindow(size_t a, size_t b, Window w) {
  if (a != b) throw Error(ErrorCode::kInvalidDimension, "length mismatch");
  if (w.begin < 0 || w.end > static_cast<int>(a) || w.end <= w.begin) {
    throw Error(ErrorCode::kInvalidDimension, "window outside signals");
  }
}

MetricValue Ratio(double num, double den) {
  MetricValue m;
  if (den <= 0.0 && num <= 0.0) {
    m.flag = "undefined";
    return m;
  }
  if (den <= 0.0 || ToDb(num / den) > kDbLimit) {
    m.db = kDbLimit;
    m.flag = "capped";
  } else if (num <= 0.0 || ToDb(num / den) < -kDbLimit) {
    m.db = -kDbLimit;
    m.flag = "floored";
  } else {
    m.db = ToDb(num / den);
  }
  return m;
}

}  // namespace

double ToDb(double ratio) { return 10.0 * std::log10(ratio); }

Window DefaultWindow(int n) { return {n - n / 4, n}; }

MetricValue NoiseReduction(const std::vector<double>& v,
                           const std::vector<double>& v_anc, Window w) {
  CheckWindow(v.size(), v_anc.size(), w);
  return Ratio(MeanSquare(v, w.begin, w.end), MeanSquare(v_anc, w.begin, w.end));
}

MetricValue Sdi(const std::vector<double>& s, const std::vector<double>& e_s,
                Window w, double highpass_hz, double fs) {
  CheckWindow(s.size(), e_s.size(), w);
  std::vector<double> a = s;
  std::vector<double> b = e_s;
  if (highpass_hz > 0.0) {
    a = ZeroPhaseBand(a, highpass_hz, 0.0, fs);
    b = ZeroPhaseBand(b, highpass_hz, 0.0, fs);
  }
  const double ps = MeanSquare(a, w.begin, w.end);
  if (!(ps > 0.0)) {
    throw Error(ErrorCode::kUndefinedMetric, "SDI undefined: zero s power");
  }
  double err = 0.0;
  for (int n = w.begin; n < w.end; ++n) err += (a[n] - b[n]) * (a[n] - b[n]);
  err /= (w.end - w.begin);
  return Ratio(err, ps);
}

double RelativeEnergy(const std::vector<double>& y,
                      const std::vector<double>& y_ref, Window w) {
  CheckWindow(y.size(), y_ref.size(), w);
  const double ref = MeanSquare(y_ref, w.begin, w.end);
  if (!(ref > 0.0)) {
    throw Error(ErrorCode::kUndefinedMetric, "zero reference energy");
  }
  return 100.0 * MeanSquare(y, w.begin, w.end) / ref;
}

std::vector<MetricValue> BandNr(const std::vector<double>& v,
                                const std::vector<double>& v_anc,
                                const std::vector<Band>& bands, double fs,
                                Window w) {
  CheckWindow(v.size(), v_anc.size(), w);
  std::vector<MetricValue> out;
  for (const auto& [lo, hi] : bands) {
    if (!(lo >= 0.0) || !(hi > lo) || hi > fs / 2.0) {
      throw Error(ErrorCode::kConfiguration, "empty or invalid band");
    }
    const double f_lo = lo > 0.0 ? lo : 0.0;
    const double f_hi = hi < fs / 2.0 ? hi : 0.0;
    const auto a = ZeroPhaseBand(v, f_lo, f_hi, fs);
    const auto b = ZeroPhaseBand(v_anc, f_lo, f_hi, fs);
    const double pa = MeanSquare(a, w.begin, w.end);
    const double pb = MeanSquare(b, w.begin, w.end);
    MetricValue m;
    if (!(pa > 1e-300)) {
      m.flag = "undefined";
    } else {
      m = Ratio(pa, pb);
    }
    out.push_back(m);
  }
  return out;
}

int EstimateLag(const std::vector<double>& ref, const std::vector<double>& sig,
                int max_lag, Window w) {
  CheckWindow(ref.size(), sig.size(), w);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(ref.size());
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int i = w.begin; i < w.end; ++i) {
      const int j = i + lag;
      if (j >= 0 && j < n) acc += ref[i] * sig[j];
    }
    if (acc > best_val) {
      best_val = acc;
      best = lag;
    }
  }
  return best;
}

}  // namespace sanc
