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

#include "sanc/baselines/frost.h"

#include "sanc/constraint/constraint.h"
#include "sanc/dsp/toeplitz.h"
#include "sanc/error.h"

namespace sanc {

FrostBeamformer::FrostBeamformer(const FrostConfig& config)
    : M_(static_cast<int>(config.reirs.size())), L_(config.L), mu_(config.mu) {
  if (M_ < 2) throw Error(ErrorCode::kConfiguration, "Frost needs >= 2 mics");
  if (L_ < 1) throw Error(ErrorCode::kInvalidDimension, "Frost L < 1");
  const int span =
      config.span > 0 ? config.span : FullConstraintSpan(config.reirs, L_);
  C_.resize(static_cast<Eigen::Index>(M_) * L_, span);
  for (int m = 0; m < M_; ++m) {
    config.reirs[m].Validate();
    C_.middleRows(static_cast<Eigen::Index>(m) * L_, L_) =
        ConvolutionMatrix(config.reirs[m].taps, span, L_).transpose();
  }
  target_ = Eigen::VectorXd::Zero(span);
  for (int n = 0; n < span && n < static_cast<int>(config.target.size()); ++n) {
    target_(n) = config.target[n];
  }
  projection_ = BuildProjectionFromOperator(C_, target_, 0.0,
                                            InverseMode::kPseudoinverse);
  b_ = projection_.q;
  x_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(M_) * L_);
  hist_.assign(static_cast<size_t>(M_) * 2 * L_, 0.0);
}

double FrostBeamformer::Step(const double* mic_samples) {
  pos_ = (pos_ + L_ - 1) % L_;
  for (int m = 0; m < M_; ++m) {
    double* ch = hist_.data() + static_cast<size_t>(m) * 2 * L_;
    ch[pos_] = mic_samples[m];
    ch[pos_ + L_] = mic_samples[m];
    x_.segment(static_cast<Eigen::Index>(m) * L_, L_) =
        Eigen::Map<const Eigen::VectorXd>(ch + pos_, L_);
  }
  const double z = b_.dot(x_);
  if (!std::isfinite(z)) {
    throw Error(ErrorCode::kDivergence, "Frost output not finite");
  }
  const double norm = x_.squaredNorm() + 1e-9;
  b_.noalias() -= (mu_ * z / norm) * x_;
  projection_.ApplyAffine(b_);
  return z;
}

double FrostBeamformer::ConstraintResidual() const {
  return (C_.transpose() * b_ - target_).norm();
}

std::vector<double> FrostBeamformerRun(
    const std::vector<std::vector<double>>& mic_signals,
    const FrostConfig& config, Eigen::VectorXd* final_b) {
  FrostBeamformer bf(config);
  if (static_cast<int>(mic_signals.size()) != bf.mics()) {
    throw Error(ErrorCode::kInvalidDimension, "mic signal count");
  }
  const size_t n = mic_signals.front().size();
  std::vector<double> z(n);
  std::vector<double> frame(bf.mics());
  for (size_t i = 0; i < n; ++i) {
    for (int m = 0; m < bf.mics(); ++m) frame[m] = mic_signals[m][i];
    z[i] = bf.Step(frame.data());
  }
  if (final_b) *final_b = bf.b();
  return z;
}

}  // namespace sanc
