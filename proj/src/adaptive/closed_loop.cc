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

#include "sanc/adaptive/closed_loop.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sanc/dsp/matrix_io.h"
#include "sanc/error.h"

namespace sanc {

void SimulationTrace::WriteCsv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f << "n,d,e,y\n";
  char buf[128];
  for (int n = 0; n < length(); ++n) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g\n", n, d[n], e[n], y[n]);
    f << buf;
  }
}

void SimulationTrace::WriteSnapshots(const std::string& path) const {
  if (anc_snapshots.empty()) return;
  Eigen::MatrixXd m(anc_snapshots.front().size(), anc_snapshots.size() + 1);
  m.setZero();
  m(0, 0) = hop;
  for (size_t j = 0; j < anc_snapshots.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j) + 1) = anc_snapshots[j];
  }
  WriteMatrix(path, m);
}

SnapshotRecorder::SnapshotRecorder(int hop, int duration)
    : hop_(hop), duration_(duration) {
  if (hop < 1) throw Error(ErrorCode::kConfiguration, "hop < 1");
}

bool SnapshotRecorder::Due(int n) const {
  const int block = next_;
  if (block * hop_ >= duration_) return false;
  const int end = std::min((block + 1) * hop_, duration_);
  const int mid = block * hop_ + (end - block * hop_) / 2;
  return n == mid;
}

void SnapshotRecorder::Take(int n, const Eigen::VectorXd& anc,
                            const Eigen::VectorXd* bf, SimulationTrace& trace) {
  trace.anc_snapshots.push_back(anc);
  if (bf) trace.bf_snapshots.push_back(*bf);
  trace.snapshot_sample.push_back(n);
  ++next_;
}

void SnapshotRecorder::Finish(int n_done, const Eigen::VectorXd& anc,
                              const Eigen::VectorXd* bf,
                              SimulationTrace& trace) {
  const int blocks = (n_done + hop_ - 1) / hop_;
  while (next_ < blocks) Take(n_done, anc, bf, trace);
}

double DivergenceThreshold(const std::vector<double>& d) {
  double ms = 0.0;
  for (double v : d) ms += v * v;
  ms = d.empty() ? 0.0 : ms / static_cast<double>(d.size());
  return kDivergenceFactor * std::max(std::sqrt(ms), 1e-12);
}

SimulationTrace RunClosedLoop(const RenderedScene& scene,
                              const ControllerConfig& config, int duration,
                              int hop) {
  if (duration > scene.length()) {
    throw Error(ErrorCode::kInsufficientData, "scene shorter than duration");
  }
  const auto order = scene.geometry.ChannelOrder();
  const int num_refs = static_cast<int>(order.size()) - 1;
  if (config.num_refs != num_refs || !config.feedback) {
    throw Error(ErrorCode::kConfiguration,
                "controller must take every non-error mic plus feedback");
  }
  AncController ctl(config);
  SimulationTrace tr;
  tr.hop = hop;
  tr.layout.name = config.projection ? "proposed" : "unconstrained";
  tr.layout.L = config.L;
  tr.layout.anc_ref_mics.assign(order.begin(), order.end() - 1);
  tr.layout.feedback = true;
  tr.d.assign(scene.d.begin(), scene.d.begin() + duration);
  tr.e.reserve(duration);
  tr.y.reserve(duration);
  tr.mu.reserve(duration);

  std::vector<std::vector<double>> mics(num_refs);
  for (int j = 0; j < num_refs; ++j) mics[j] = scene.Mic(order[j]);
  const auto& g = scene.g.taps;
  const double limit = DivergenceThreshold(tr.d);
  SnapshotRecorder snaps(hop, duration);
  std::vector<double> refs(num_refs);
  int n = 0;
  try {
    for (; n < duration; ++n) {
      double e = scene.d[n];
      for (size_t m = 1; m < g.size() && m <= static_cast<size_t>(n); ++m) {
        e += g[m] * tr.y[n - m];
      }
      if (!std::isfinite(e) || std::abs(e) > limit) {
        throw Error(ErrorCode::kDivergence,
                    "|e| exceeded 1e6 RMS(d) at sample " + std::to_string(n));
      }
      if (snaps.Due(n)) snaps.Take(n, ctl.w(), nullptr, tr);
      for (int j = 0; j < num_refs; ++j) refs[j] = mics[j][n];
      const double y = ctl.Step(refs.data(), e);
      tr.e.push_back(e);
      tr.y.push_back(y);
      tr.mu.push_back(ctl.mu());
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kDivergence) throw;
    tr.diverged = true;
    tr.diagnostic = err.what();
    tr.d.resize(tr.e.size());
  }
  snaps.Finish(static_cast<int>(tr.e.size()), ctl.w(), nullptr, tr);
  return tr;
}

}  // namespace sanc
