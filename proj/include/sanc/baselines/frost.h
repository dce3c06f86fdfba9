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

#ifndef SANC_BASELINES_FROST_H_
#define SANC_BASELINES_FROST_H_

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "sanc/constraint/projection.h"
#include "sanc/dsp/signal.h"

namespace sanc {

struct FrostConfig {
  int L = 128;
  // ReIRs of the beamformer mics toward the steering direction.
  std::vector<ImpulseResponse> reirs;
  // Desired response of the output (e.g. the ReIR of a target mic).
  std::vector<double> target;
  // Constrained response lags; <= 0 selects the full convolution span.
  int span = 0;
  // Normalized step size.
  double mu = 0.05;
};

// Adaptive LCMV filter b(n+1) = P [b(n) - mu z(n) x(n) / (eps + |x|^2)] + q
// with C^T b = target over the constrained span.
class FrostBeamformer {
 public:
  explicit FrostBeamformer(const FrostConfig& config);

  double Step(const double* mic_samples);
  const Eigen::VectorXd& b() const { return b_; }
  double ConstraintResidual() const;
  int mics() const { return M_; }
  int L() const { return L_; }

 private:
  int M_;
  int L_;
  double mu_;
  Eigen::MatrixXd C_;
  Eigen::VectorXd target_;
  ProjectionPair projection_;
  std::vector<double> hist_;
  int pos_ = 0;
  Eigen::VectorXd x_;
  Eigen::VectorXd b_;
};

// Runs the beamformer over whole signals (one per mic).
std::vector<double> FrostBeamformerRun(
    const std::vector<std::vector<double>>& mic_signals,
    const FrostConfig& config, Eigen::VectorXd* final_b = nullptr);

}  // namespace sanc

#endif  // SANC_BASELINES_FROST_H_
