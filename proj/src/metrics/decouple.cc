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

#include "sanc/metrics/decouple.h"

#include "sanc/error.h"

namespace sanc {
namespace {

// y(n) = sum_j w_j^T x_j(n) over [begin, end) with x_j taken from inputs.
void FilterBlock(const Eigen::VectorXd& w, int L,
                 const std::vector<const std::vector<double>*>& inputs,
                 int begin, int end, std::vector<double>& y) {
  for (size_t j = 0; j < inputs.size(); ++j) {
    const auto& x = *inputs[j];
    const double* wj = w.data() + j * L;
    for (int n = begin; n < end; ++n) {
      double acc = 0.0;
      const int taps = std::min(L, n + 1);
      for (int i = 0; i < taps; ++i) acc += wj[i] * x[n - i];
      y[n] += acc;
    }
  }
}

}  // namespace

std::vector<double> FrozenResidual(const SimulationTrace& trace,
                                   const RenderedScene& scene,
                                   const std::vector<std::vector<double>>& mics,
                                   const std::vector<double>& d) {
  const int N = trace.length();
  const int hop = trace.hop;
  const auto& lay = trace.layout;
  const int blocks = hop > 0 ? (N + hop - 1) / hop : 0;
  if (hop < 1 || static_cast<int>(trace.anc_snapshots.size()) < blocks) {
    throw Error(ErrorCode::kInsufficientData, "trace lacks filter snapshots");
  }
  const bool bf = lay.injection == InjectionMode::kSecondary;
  if (bf && static_cast<int>(trace.bf_snapshots.size()) < blocks) {
    throw Error(ErrorCode::kInsufficientData, "trace lacks beamformer snapshots");
  }
  std::vector<const std::vector<double>*> anc_in;
  for (int k : lay.anc_ref_mics) anc_in.push_back(&mics[k]);
  if (lay.feedback) anc_in.push_back(&d);
  std::vector<const std::vector<double>*> bf_in;
  for (int k : lay.bf_mics) bf_in.push_back(&mics[k]);

  std::vector<double> y(N, 0.0);
  std::vector<double> z(N, 0.0);
  for (int j = 0; j < blocks; ++j) {
    const int b = j * hop;
    const int e = std::min(N, b + hop);
    FilterBlock(trace.anc_snapshots[j], lay.L, anc_in, b, e, y);
    if (bf) FilterBlock(trace.bf_snapshots[j], lay.bf_L, bf_in, b, e, z);
  }
  if (bf) {
    const int D = lay.injection_delay;
    for (int n = D; n < N; ++n) y[n] += lay.injection_gain * z[n - D];
  }
  const auto& g = scene.g.taps;
  std::vector<double> out(N);
  for (int n = 0; n < N; ++n) {
    double acc = d[n];
    for (size_t m = 0; m < g.size() && m <= static_cast<size_t>(n); ++m) {
      acc += g[m] * y[n - m];
    }
    out[n] = acc;
  }
  return out;
}

ComponentDecomposition DecoupleComponents(const SimulationTrace& trace,
                                          const RenderedScene& scene) {
  const int N = trace.length();
  std::vector<double> ds(scene.desired[scene.error_mic].begin(),
                         scene.desired[scene.error_mic].begin() + N);
  std::vector<double> dv(scene.noise[scene.error_mic].begin(),
                         scene.noise[scene.error_mic].begin() + N);
  ComponentDecomposition out;
  out.e_s = FrozenResidual(trace, scene, scene.desired, ds);
  out.v_anc = FrozenResidual(trace, scene, scene.noise, dv);
  return out;
}

std::vector<double> FixedFilterResidual(
    const Eigen::VectorXd& w, const RenderedScene& scene,
    const std::vector<std::vector<double>>& mics, std::vector<double>* y_out) {
  const auto order = scene.geometry.ChannelOrder();
  const int N = static_cast<int>(mics[scene.error_mic].size());
  std::vector<const std::vector<double>*> in;
  for (int k : order) in.push_back(&mics[k]);
  std::vector<double> y(N, 0.0);
  FilterBlock(w, scene.L, in, 0, N, y);
  const auto& g = scene.g.taps;
  std::vector<double> out(N);
  for (int n = 0; n < N; ++n) {
    double acc = mics[scene.error_mic][n];
    for (size_t m = 0; m < g.size() && m <= static_cast<size_t>(n); ++m) {
      acc += g[m] * y[n - m];
    }
    out[n] = acc;
  }
  if (y_out) *y_out = std::move(y);
  return out;
}

}  // namespace sanc
