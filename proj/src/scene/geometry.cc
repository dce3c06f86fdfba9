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

#include "sanc/scene/geometry.h"

#include <cmath>
#include <numbers>

#include "sanc/error.h"

namespace sanc {

void ArrayGeometry::Validate() const {
  if (mic_positions.size() < 2) {
    throw Error(ErrorCode::kConfiguration, "geometry needs >= 2 mics");
  }
  if (error_mic_index < 0 || error_mic_index >= size()) {
    throw Error(ErrorCode::kConfiguration, "error mic index out of range");
  }
  for (const auto& p : mic_positions) {
    if (!p.allFinite()) throw Error(ErrorCode::kConfiguration, "non-finite");
  }
  if (!secondary_source_position.allFinite()) {
    throw Error(ErrorCode::kConfiguration, "non-finite secondary position");
  }
}

std::vector<int> ArrayGeometry::ChannelOrder() const {
  std::vector<int> order;
  for (int k = 0; k < size(); ++k) {
    if (k != error_mic_index) order.push_back(k);
  }
  order.push_back(error_mic_index);
  return order;
}

GeometryPreset ParseGeometryPreset(const std::string& name) {
  if (name == "glasses6") return GeometryPreset::kGlasses6;
  if (name == "circular8plus1") return GeometryPreset::kCircular8Plus1;
  if (name == "custom") return GeometryPreset::kCustom;
  throw Error(ErrorCode::kConfiguration, "unknown geometry preset '" + name +
                                             "'");
}

ArrayGeometry BuildGeometry(GeometryPreset preset,
                            const std::vector<Eigen::Vector3d>& custom,
                            int custom_error_mic) {
  ArrayGeometry g;
  switch (preset) {
    case GeometryPreset::kGlasses6:
      // Approximate frame and ear positions of a pair of glasses, meters.
      g.mic_positions = {{0.085, 0.070, 0.0},  {0.095, 0.025, 0.0},
                         {0.095, -0.025, 0.0}, {0.085, -0.070, 0.0},
                         {0.0, 0.080, -0.02},  {0.0, -0.080, -0.02}};
      g.error_mic_index = 5;
      g.preset = "glasses6";
      break;
    case GeometryPreset::kCircular8Plus1:
      for (int i = 0; i < 8; ++i) {
        const double a = i * std::numbers::pi / 4.0;
        g.mic_positions.emplace_back(0.10 * std::cos(a), 0.10 * std::sin(a),
                                     0.0);
      }
      g.mic_positions.emplace_back(0.0, 0.0, 0.0);
      g.error_mic_index = 8;
      g.preset = "circular8plus1";
      break;
    case GeometryPreset::kCustom:
      if (custom.size() < 2) {
        throw Error(ErrorCode::kConfiguration, "custom geometry needs >= 2 mics");
      }
      g.mic_positions = custom;
      g.error_mic_index = custom_error_mic >= 0
                              ? custom_error_mic
                              : static_cast<int>(custom.size()) - 1;
      g.preset = "custom";
      break;
  }
  if (preset != GeometryPreset::kCustom && custom_error_mic >= 0) {
    g.error_mic_index = custom_error_mic;
  }
  g.secondary_source_position =
      g.mic_positions[g.error_mic_index] + Eigen::Vector3d(0.0, 0.0, 0.05);
  g.Validate();
  return g;
}

Eigen::Vector3d DoaUnitVector(double doa_deg) {
  const double a = doa_deg * std::numbers::pi / 180.0;
  return {std::cos(a), std::sin(a), 0.0};
}

double RelativeDelaySamples(const ArrayGeometry& g, int k, int ref,
                            double doa_deg, double fs) {
  const Eigen::Vector3d u = DoaUnitVector(doa_deg);
  return (g.mic_positions[ref] - g.mic_positions[k]).dot(u) / kSpeedOfSound *
         fs;
}

int DefaultReferenceMic(const ArrayGeometry& g, double doa_deg) {
  const Eigen::Vector3d u = DoaUnitVector(doa_deg);
  int best = -1;
  double best_proj = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    if (k == g.error_mic_index) continue;
    const double p = g.mic_positions[k].dot(u);
    if (best < 0 || p > best_proj + 1e-12) {
      best = k;
      best_proj = p;
    }
  }
  return best;
}

}  // namespace sanc
