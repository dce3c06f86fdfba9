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

#ifndef SANC_SCENE_GEOMETRY_H_
#define SANC_SCENE_GEOMETRY_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sanc {

constexpr double kSpeedOfSound = 343.0;

// Azimuth is counterclockwise from +x (front); +y points to the left.
struct ArrayGeometry {
  std::vector<Eigen::Vector3d> mic_positions;
  int error_mic_index = 0;
  Eigen::Vector3d secondary_source_position = Eigen::Vector3d::Zero();
  std::string preset = "custom";

  int size() const { return static_cast<int>(mic_positions.size()); }
  void Validate() const;
  // Non-error mics in index order followed by the error mic.
  std::vector<int> ChannelOrder() const;
};

enum class GeometryPreset { kGlasses6, kCircular8Plus1, kCustom };

GeometryPreset ParseGeometryPreset(const std::string& name);

// glasses6: mics 0-3 on the front frame, 4 = left ear, 5 = right ear (error).
// circular8plus1: eight mics on a 0.10 m ring at 45 degree steps, error mic 8
// at the center.
ArrayGeometry BuildGeometry(GeometryPreset preset,
                            const std::vector<Eigen::Vector3d>& custom = {},
                            int custom_error_mic = -1);

Eigen::Vector3d DoaUnitVector(double doa_deg);

// Arrival time (samples) of a plane wave from doa at mic k relative to mic
// ref; positive means mic k hears it later.
double RelativeDelaySamples(const ArrayGeometry& g, int k, int ref,
                            double doa_deg, double fs);

// Non-error mic that the plane wave from doa reaches first.
int DefaultReferenceMic(const ArrayGeometry& g, double doa_deg);

}  // namespace sanc

#endif  // SANC_SCENE_GEOMETRY_H_
