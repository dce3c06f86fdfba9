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

#ifndef SANC_OPTIMAL_STATS_H_
#define SANC_OPTIMAL_STATS_H_

#include <Eigen/Dense>
#include <vector>

#include "sanc/dsp/signal.h"

namespace sanc {

// Time-averaged statistics of r(n) = G^T x(n) over n in [begin, N).
struct CorrelationStats {
  Eigen::MatrixXd phi_rr;
  Eigen::VectorXd phi_rd;
  long sample_count = 0;
  int L = 0;
  int K = 0;
};

// channels[j] is input channel j (the last one carries the disturbance);
// zero prehistory before n = 0.
CorrelationStats AccumulateStats(const std::vector<std::vector<double>>& channels,
                                 const std::vector<double>& d,
                                 const ImpulseResponse& g_hat, int L,
                                 int begin = 0);

// Direct accumulation of r(n) r(n)^T; reference implementation.
CorrelationStats AccumulateStatsDirect(
    const std::vector<std::vector<double>>& channels,
    const std::vector<double>& d, const ImpulseResponse& g_hat, int L,
    int begin = 0);

// r(n) for one channel given its history (x[0] = x(n), x[1] = x(n-1), ...).
void FilteredReference(const double* x_hist, const std::vector<double>& g,
                       int L, double* r);

}  // namespace sanc

#endif  // SANC_OPTIMAL_STATS_H_
