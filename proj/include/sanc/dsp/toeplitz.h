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

#ifndef SANC_DSP_TOEPLITZ_H_
#define SANC_DSP_TOEPLITZ_H_

#include <Eigen/Dense>

#include "sanc/dsp/signal.h"

namespace sanc {

// L x L lower-triangular Toeplitz matrix whose first column holds the first L
// taps of h (zero padded).
Eigen::MatrixXd MakeToeplitz(const ImpulseResponse& h, int L);
Eigen::MatrixXd MakeToeplitz(const std::vector<double>& taps, int L);

// rows x cols convolution matrix: (C u)_i = sum_j taps[i - j] u_j.
Eigen::MatrixXd ConvolutionMatrix(const std::vector<double>& taps, int rows,
                                  int cols);

// Block diagonal stack of K copies of a square block.
Eigen::MatrixXd BlockDiagonal(const Eigen::MatrixXd& block, int K);

}  // namespace sanc

#endif  // SANC_DSP_TOEPLITZ_H_
