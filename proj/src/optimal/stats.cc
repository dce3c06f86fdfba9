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

#include "sanc/optimal/stats.h"

#include "sanc/dsp/toeplitz.h"
#include "sanc/error.h"

namespace sanc {
namespace {

void CheckInputs(const std::vector<std::vector<double>>& channels,
                 const std::vector<double>& d, int L, int begin) {
  if (L < 1) throw Error(ErrorCode::kInvalidDimension, "L must be >= 1");
  if (channels.empty()) throw Error(ErrorCode::kInvalidDimension, "no channels");
  const size_t n = d.size();
  for (const auto& ch : channels) {
    if (ch.size() != n) {
      throw Error(ErrorCode::kInvalidDimension, "streams not aligned");
    }
  }
  if (static_cast<int>(n) <= L) {
    throw Error(ErrorCode::kInsufficientData, "stream not longer than L");
  }
  if (begin < 0 || begin >= static_cast<int>(n)) {
    throw Error(ErrorCode::kInsufficientData, "empty averaging window");
  }
}

}  // namespace

void FilteredReference(const double* x_hist, const std::vector<double>& g,
                       int L, double* r) {
  for (int i = 0; i < L; ++i) r[i] = 0.0;
  const int taps = static_cast<int>(g.size());
  for (int m = 0; m < taps && m < L; ++m) {
    const double gm = g[m];
    if (gm == 0.0) continue;
    for (int i = 0; i + m < L; ++i) r[i] += gm * x_hist[i + m];
  }
}

CorrelationStats AccumulateStats(const std::vector<std::vector<double>>& channels,
                                 const std::vector<double>& d,
                                 const ImpulseResponse& g_hat, int L,
                                 int begin) {
  CheckInputs(channels, d, L, begin);
  const int K = static_cast<int>(channels.size());
  const int N = static_cast<int>(d.size());
  const long T = N - begin;
  auto at = [](const std::vector<double>& x, int m) {
    return m >= 0 ? x[m] : 0.0;
  };

  // Blocks of sum_n x_a(n - i) x_b(n - j) via the diagonal recurrence
  // C(i+1, j+1) = C(i, j) + x_a(b0-1-i) x_b(b0-1-j) - x_a(N-1-i) x_b(N-1-j).
  Eigen::MatrixXd phi_xx(static_cast<Eigen::Index>(K) * L,
                         static_cast<Eigen::Index>(K) * L);
  Eigen::MatrixXd c(L, L);
  for (int a = 0; a < K; ++a) {
    for (int b = a; b < K; ++b) {
      const auto& xa = channels[a];
      const auto& xb = channels[b];
      for (int j = 0; j < L; ++j) {
        double s0j = 0.0, sj0 = 0.0;
        for (int n = std::max(begin, j); n < N; ++n) {
          s0j += xa[n] * xb[n - j];
          sj0 += xa[n - j] * xb[n];
        }
        c(0, j) = s0j;
        c(j, 0) = sj0;
      }
      for (int i = 0; i + 1 < L; ++i) {
        for (int j = 0; j + 1 < L; ++j) {
          c(i + 1, j + 1) = c(i, j) + at(xa, begin - 1 - i) * at(xb, begin - 1 - j) -
                            at(xa, N - 1 - i) * at(xb, N - 1 - j);
        }
      }
      phi_xx.block(static_cast<Eigen::Index>(a) * L,
                   static_cast<Eigen::Index>(b) * L, L, L) = c;
      if (a != b) {
        phi_xx.block(static_cast<Eigen::Index>(b) * L,
                     static_cast<Eigen::Index>(a) * L, L, L) = c.transpose();
      }
    }
  }
  Eigen::VectorXd phi_xd(static_cast<Eigen::Index>(K) * L);
  for (int a = 0; a < K; ++a) {
    for (int i = 0; i < L; ++i) {
      double s = 0.0;
      for (int n = std::max(begin, i); n < N; ++n) s += channels[a][n - i] * d[n];
      phi_xd(a * L + i) = s;
    }
  }

  const Eigen::MatrixXd gm = MakeToeplitz(g_hat, L);
  CorrelationStats st;
  st.L = L;
  st.K = K;
  st.sample_count = T;
  st.phi_rr.resize(phi_xx.rows(), phi_xx.cols());
  st.phi_rd.resize(phi_xd.size());
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      st.phi_rr.block(static_cast<Eigen::Index>(a) * L,
                      static_cast<Eigen::Index>(b) * L, L, L).noalias() =
          gm.transpose() *
          phi_xx.block(static_cast<Eigen::Index>(a) * L,
                       static_cast<Eigen::Index>(b) * L, L, L) *
          gm;
    }
    st.phi_rd.segment(static_cast<Eigen::Index>(a) * L, L).noalias() =
        gm.transpose() * phi_xd.segment(static_cast<Eigen::Index>(a) * L, L);
  }
  st.phi_rr /= static_cast<double>(T);
  st.phi_rd /= static_cast<double>(T);
  st.phi_rr = 0.5 * (st.phi_rr + st.phi_rr.transpose()).eval();
  return st;
}

CorrelationStats AccumulateStatsDirect(
    const std::vector<std::vector<double>>& channels,
    const std::vector<double>& d, const ImpulseResponse& g_hat, int L,
    int begin) {
  CheckInputs(channels, d, L, begin);
  const int K = static_cast<int>(channels.size());
  const int N = static_cast<int>(d.size());
  const int G = g_hat.size();
  CorrelationStats st;
  st.L = L;
  st.K = K;
  st.sample_count = N - begin;
  st.phi_rr = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K) * L,
                                    static_cast<Eigen::Index>(K) * L);
  st.phi_rd = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(K) * L);
  Eigen::VectorXd r(static_cast<Eigen::Index>(K) * L);
  std::vector<double> hist(L + G);
  for (int n = begin; n < N; ++n) {
    for (int a = 0; a < K; ++a) {
      for (int i = 0; i < L + G; ++i) {
        hist[i] = n - i >= 0 ? channels[a][n - i] : 0.0;
      }
      FilteredReference(hist.data(), g_hat.taps, L, r.data() + a * L);
    }
    st.phi_rr.noalias() += r * r.transpose();
    st.phi_rd += r * d[n];
  }
  st.phi_rr /= static_cast<double>(st.sample_count);
  st.phi_rd /= static_cast<double>(st.sample_count);
  return st;
}

}  // namespace sanc
