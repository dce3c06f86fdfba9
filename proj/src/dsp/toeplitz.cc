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

#include "sanc/dsp/toeplitz.h"

#include <string>

#include "sanc/error.h"

namespace sanc {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kCausality: return "causality";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kBulkDelayTooSmall: return "bulk-delay-too-small";
    case ErrorCode::kNonMinimumPhase: return "non-minimum-phase";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Eigen::MatrixXd ConvolutionMatrix(const std::vector<double>& taps, int rows,
                                  int cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::kInvalidDimension, "convolution matrix size");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  const int n = static_cast<int>(taps.size());
  for (int j = 0; j < cols; ++j) {
    for (int t = 0; t < n && j + t < rows; ++t) m(j + t, j) = taps[t];
  }
  return m;
}

Eigen::MatrixXd MakeToeplitz(const std::vector<double>& taps, int L) {
  if (L < 1) throw Error(ErrorCode::kInvalidDimension, "L must be >= 1");
  if (taps.empty()) throw Error(ErrorCode::kInvalidDimension, "empty taps");
  return ConvolutionMatrix(taps, L, L);
}

Eigen::MatrixXd MakeToeplitz(const ImpulseResponse& h, int L) {
  return MakeToeplitz(h.taps, L);
}

Eigen::MatrixXd BlockDiagonal(const Eigen::MatrixXd& block, int K) {
  const int r = static_cast<int>(block.rows());
  const int c = static_cast<int>(block.cols());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r * K, c * K);
  for (int k = 0; k < K; ++k) m.block(k * r, k * c, r, c) = block;
  return m;
}

}  // namespace sanc
