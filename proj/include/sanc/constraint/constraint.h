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

#ifndef SANC_CONSTRAINT_CONSTRAINT_H_
#define SANC_CONSTRAINT_CONSTRAINT_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sanc/dsp/signal.h"

namespace sanc {

// Input channel j of the stacked vector corresponds to mic channel_mics[j];
// the error mic (carrying the reconstructed disturbance) is last.
//
// H is (K L) x Lc. Block j (rows j L .. j L + L - 1) is the transpose of the
// Lc x L convolution matrix of that mic's ReIR, so H^T u = sum_j h_j * u_j
// over the first Lc response lags. Lc = L reproduces the square Toeplitz
// blocks; a longer span also pins the tail of the response.
struct SpatialConstraint {
  Eigen::MatrixXd H;
  Eigen::VectorXd f;
  std::vector<int> channel_mics;
  std::vector<double> error_reir;
  int ref_mic = 0;
  int error_mic = 0;
  int L = 0;
  bool weighted = false;

  int K() const { return static_cast<int>(channel_mics.size()); }
  int span() const { return static_cast<int>(f.size()); }
  // Unit vector selecting the current disturbance sample.
  Eigen::VectorXd DeltaTilde() const;
  Eigen::VectorXd HtDelta() const;
  // Rows of H belonging to mic k.
  Eigen::MatrixXd Block(int channel) const;
};

// Response span covering the full convolution of a length-L filter with
// every ReIR.
int FullConstraintSpan(const std::vector<ImpulseResponse>& reirs, int L);

// reirs is indexed by mic. span <= 0 selects L.
SpatialConstraint BuildConstraint(const std::vector<ImpulseResponse>& reirs,
                                  int error_mic, int ref_mic, int L,
                                  int span = 0);

// f <- first Lc samples of s * h_error. Rejects non-minimum-phase s.
SpatialConstraint ApplySpectralWeighting(const SpatialConstraint& c,
                                         const ImpulseResponse& s_ir);

}  // namespace sanc

#endif  // SANC_CONSTRAINT_CONSTRAINT_H_
