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

#include "sanc/adaptive/controller.h"

#include <cmath>

#include "sanc/error.h"
#include "sanc/optimal/stats.h"

namespace sanc {

AncController::AncController(ControllerConfig config)
    : config_(std::move(config)) {
  K_ = config_.channels();
  if (config_.L < 1 || K_ < 1) {
    throw Error(ErrorCode::kInvalidDimension, "controller dimensions");
  }
  config_.g_hat.Validate();
  config_.vss.Validate();
  if (config_.projection_stride < 1) {
    throw Error(ErrorCode::kConfiguration, "projection stride < 1");
  }
  if (config_.feedback && config_.g_hat.taps[0] != 0.0) {
    throw Error(ErrorCode::kConfiguration,
                "closed-loop reconstruction needs a secondary delay >= 1");
  }
  const int n = K_ * config_.L;
  if (config_.projection && config_.projection->dim() != n) {
    throw Error(ErrorCode::kInvalidDimension, "projection size");
  }
  for (int m = 0; m < config_.g_hat.size(); ++m) {
    if (config_.g_hat.taps[m] != 0.0) {
      g_taps_.emplace_back(m, config_.g_hat.taps[m]);
    }
  }
  hlen_ = config_.L + config_.g_hat.size();
  hist_.assign(static_cast<size_t>(K_) * 2 * hlen_, 0.0);
  ylen_ = config_.g_hat.size() + 1;
  y_hist_.assign(2 * ylen_, 0.0);
  if (config_.w0) {
    if (config_.w0->size() != n) {
      throw Error(ErrorCode::kInvalidDimension, "w0 size");
    }
    w_ = *config_.w0;
  } else if (config_.projection) {
    w_ = config_.projection->q;
  } else {
    w_ = Eigen::VectorXd::Zero(n);
  }
  r_ = Eigen::VectorXd::Zero(n);
  vss_ = InitVss(config_.vss);
}

double AncController::Step(const double* refs, double e, double adapt_offset,
                           double injection) {
  const int L = config_.L;
  // y_hist_[ypos_ + m] holds the drive at n - 1 - m.
  double dhat = e;
  for (const auto& [m, g] : g_taps_) {
    if (m >= 1) dhat -= g * y_hist_[ypos_ + m - 1];
  }
  last_dhat_ = dhat;

  pos_ = (pos_ + hlen_ - 1) % hlen_;
  for (int j = 0; j < K_; ++j) {
    const double v =
        (config_.feedback && j == K_ - 1) ? dhat : refs[j];
    double* ch = hist_.data() + static_cast<size_t>(j) * 2 * hlen_;
    ch[pos_] = v;
    ch[pos_ + hlen_] = v;
  }
  for (int j = 0; j < K_; ++j) {
    FilteredReference(Window(j), config_.g_hat.taps, L, r_.data() + j * L);
  }

  const double eps = e - adapt_offset;
  if (!std::isfinite(eps) || !std::isfinite(e)) {
    throw Error(ErrorCode::kDivergence,
                "non-finite error signal at sample " + std::to_string(n_));
  }
  if (vss_.mu != 0.0 && eps != 0.0) w_.noalias() -= (vss_.mu * eps) * r_;
  if (config_.projection &&
      (n_ + 1) % config_.projection_stride == 0) {
    config_.projection->ApplyAffine(w_);
  }
  VssUpdate(config_.vss, vss_, eps);

  double y = 0.0;
  for (int j = 0; j < K_; ++j) {
    y += Eigen::Map<const Eigen::VectorXd>(Window(j), L)
             .dot(w_.segment(static_cast<Eigen::Index>(j) * L, L));
  }
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::kDivergence,
                "non-finite control output at sample " + std::to_string(n_));
  }
  ypos_ = (ypos_ + ylen_ - 1) % ylen_;
  y_hist_[ypos_] = y + injection;
  y_hist_[ypos_ + ylen_] = y + injection;
  ++n_;
  return y;
}

}  // namespace sanc
