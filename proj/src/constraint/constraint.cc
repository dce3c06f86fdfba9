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

#include "sanc/constraint/constraint.h"

#include <algorithm>

#include "sanc/dsp/filters.h"
#include "sanc/dsp/toeplitz.h"
#include "sanc/error.h"

namespace sanc {

Eigen::VectorXd SpatialConstraint::DeltaTilde() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(K()) * L);
  d((K() - 1) * L) = 1.0;
  return d;
}

Eigen::VectorXd SpatialConstraint::HtDelta() const {
  return H.row((K() - 1) * L).transpose();
}

Eigen::MatrixXd SpatialConstraint::Block(int channel) const {
  return H.middleRows(static_cast<Eigen::Index>(channel) * L, L);
}

int FullConstraintSpan(const std::vector<ImpulseResponse>& reirs, int L) {
  int support = 1;
  for (const auto& h : reirs) {
    for (int n = h.size() - 1; n >= 0; --n) {
      if (h.taps[n] != 0.0) {
        support = std::max(support, n + 1);
        break;
      }
    }
  }
  return L + support - 1;
}

SpatialConstraint BuildConstraint(const std::vector<ImpulseResponse>& reirs,
                                  int error_mic, int ref_mic, int L, int span) {
  if (L < 1) throw Error(ErrorCode::kInvalidDimension, "L must be >= 1");
  const int K = static_cast<int>(reirs.size());
  if (K < 1 || error_mic < 0 || error_mic >= K || ref_mic < 0 ||
      ref_mic >= K) {
    throw Error(ErrorCode::kConfiguration, "ReIR set / mic index mismatch");
  }
  for (int k = 0; k < K; ++k) {
    if (reirs[k].taps.empty()) {
      throw Error(ErrorCode::kConfiguration,
                  "missing ReIR for mic " + std::to_string(k));
    }
    reirs[k].Validate();
  }
  const int lc = span > 0 ? span : L;
  SpatialConstraint c;
  c.L = L;
  c.ref_mic = ref_mic;
  c.error_mic = error_mic;
  for (int k = 0; k < K; ++k) {
    if (k != error_mic) c.channel_mics.push_back(k);
  }
  c.channel_mics.push_back(error_mic);
  c.H.resize(static_cast<Eigen::Index>(K) * L, lc);
  for (int j = 0; j < K; ++j) {
    c.H.middleRows(static_cast<Eigen::Index>(j) * L, L) =
        ConvolutionMatrix(reirs[c.channel_mics[j]].taps, lc, L).transpose();
  }
  c.error_reir = reirs[error_mic].taps;
  c.f = Eigen::VectorXd::Zero(lc);
  for (int n = 0; n < lc && n < static_cast<int>(c.error_reir.size()); ++n) {
    c.f(n) = c.error_reir[n];
  }
  return c;
}

SpatialConstraint ApplySpectralWeighting(const SpatialConstraint& c,
                                         const ImpulseResponse& s_ir) {
  s_ir.Validate();
  const double zmax = MaxZeroMagnitude(s_ir.taps);
  if (zmax > 1.0 + 1e-6) {
    throw Error(ErrorCode::kNonMinimumPhase,
                "weighting filter has a zero of magnitude " +
                    std::to_string(zmax));
  }
  SpatialConstraint out = c;
  const auto weighted = Convolve(s_ir.taps, c.error_reir);
  out.f.setZero();
  for (int n = 0; n < out.span() && n < static_cast<int>(weighted.size());
       ++n) {
    out.f(n) = weighted[n];
  }
  out.weighted = true;
  return out;
}

}  // namespace sanc
