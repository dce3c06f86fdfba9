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

#ifndef SANC_ADAPTIVE_CONTROLLER_H_
#define SANC_ADAPTIVE_CONTROLLER_H_

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "sanc/adaptive/vss.h"
#include "sanc/constraint/projection.h"
#include "sanc/dsp/signal.h"

namespace sanc {

struct ControllerConfig {
  int L = 128;
  int num_refs = 0;
  // Append the reconstructed disturbance as the last input channel.
  bool feedback = true;
  ImpulseResponse g_hat;
  // Null disables the constraint (P = I, q = 0).
  std::shared_ptr<const ProjectionPair> projection;
  VssParams vss;
  int projection_stride = 1;
  // Defaults to q (or zero without projection).
  std::optional<Eigen::VectorXd> w0;

  int channels() const { return num_refs + (feedback ? 1 : 0); }
};

// Hybrid feedforward/feedback controller with the projected update
// w(n+1) = P [w(n) - mu r(n) e(n)] + q.
class AncController {
 public:
  explicit AncController(ControllerConfig config);

  // refs holds num_refs samples. adapt_offset is subtracted from e to form the
  // adaptation error; injection is added to the secondary drive alongside the
  // returned control output. Returns the control output y(n).
  double Step(const double* refs, double e, double adapt_offset = 0.0,
              double injection = 0.0);

  const Eigen::VectorXd& w() const { return w_; }
  double mu() const { return vss_.mu; }
  double last_disturbance() const { return last_dhat_; }
  long samples() const { return n_; }
  const ControllerConfig& config() const { return config_; }

 private:
  const double* Window(int channel) const {
    return hist_.data() + static_cast<size_t>(channel) * 2 * hlen_ + pos_;
  }

  ControllerConfig config_;
  int K_;
  int hlen_;
  std::vector<std::pair<int, double>> g_taps_;
  std::vector<double> hist_;   // per channel, doubled ring buffer
  std::vector<double> y_hist_; // doubled ring buffer of total drive
  int pos_ = 0;
  int ypos_ = 0;
  int ylen_;
  Eigen::VectorXd w_;
  Eigen::VectorXd r_;
  VssState vss_;
  long n_ = 0;
  double last_dhat_ = 0.0;
};

}  // namespace sanc

#endif  // SANC_ADAPTIVE_CONTROLLER_H_
