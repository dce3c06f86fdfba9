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

#ifndef SANC_ADAPTIVE_CLOSED_LOOP_H_
#define SANC_ADAPTIVE_CLOSED_LOOP_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sanc/adaptive/controller.h"
#include "sanc/scene/scene.h"

namespace sanc {

constexpr double kDivergenceFactor = 1e6;

// How the extracted (beamformed) signal enters a configuration.
enum class InjectionMode {
  kNone,
  kErrorOffset,  // subtracted from the adaptation error
  kSecondary,    // added to the secondary drive
};

// Everything needed to re-run a configuration with frozen filters.
struct SystemLayout {
  std::string name = "proposed";
  int L = 0;
  std::vector<int> anc_ref_mics;
  bool feedback = true;
  std::vector<int> bf_mics;
  int bf_L = 0;
  InjectionMode injection = InjectionMode::kNone;
  int injection_delay = 0;  // samples
  double injection_gain = 1.0;
};

struct SimulationTrace {
  std::vector<double> d;
  std::vector<double> e;
  std::vector<double> y;      // total secondary drive
  std::vector<double> mu;
  int hop = 0;
  // Snapshot j is valid for samples [j hop, (j+1) hop) and was captured at
  // snapshot_sample[j], the middle of that range.
  std::vector<Eigen::VectorXd> anc_snapshots;
  std::vector<Eigen::VectorXd> bf_snapshots;
  std::vector<int> snapshot_sample;
  SystemLayout layout;
  bool diverged = false;
  std::string diagnostic;

  int length() const { return static_cast<int>(e.size()); }
  void WriteCsv(const std::string& path) const;
  // hop, then each snapshot as a KL x 1 matrix, in the binary matrix format.
  void WriteSnapshots(const std::string& path) const;
};

// Helper that captures snapshots at the middle of each hop.
class SnapshotRecorder {
 public:
  SnapshotRecorder(int hop, int duration);
  bool Due(int n) const;
  void Take(int n, const Eigen::VectorXd& anc, const Eigen::VectorXd* bf,
            SimulationTrace& trace);
  void Finish(int n_done, const Eigen::VectorXd& anc, const Eigen::VectorXd* bf,
              SimulationTrace& trace);

 private:
  int hop_;
  int duration_;
  int next_ = 0;
};

double DivergenceThreshold(const std::vector<double>& d);

// Proposed or unconstrained controller; the layout uses every non-error mic
// as a reference plus the reconstructed disturbance.
SimulationTrace RunClosedLoop(const RenderedScene& scene,
                              const ControllerConfig& config, int duration,
                              int hop);

}  // namespace sanc

#endif  // SANC_ADAPTIVE_CLOSED_LOOP_H_
