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

#ifndef SANC_SCENE_SCENE_H_
#define SANC_SCENE_SCENE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "sanc/dsp/signal.h"
#include "sanc/dsp/signal_gen.h"
#include "sanc/scene/geometry.h"

namespace sanc {

constexpr double kDefaultBulkDelay = 8.0;

struct SourceSpec {
  double doa_deg = 0.0;
  double distance_m = 1.0;
  SignalDescriptor signal;
  double level_db = 0.0;
};

struct SensorNoiseSpec {
  double ssnr_db = 0.0;
  std::vector<int> affected;
  int reference_mic = 0;
  uint64_t seed = 1000;
};

struct AcousticScene {
  ArrayGeometry geometry;
  SourceSpec desired;
  // The desired direction always defines the constraint; a silent desired
  // source gives noise-only scenes.
  bool desired_active = true;
  std::vector<SourceSpec> noises;
  int secondary_delay = 2;
  std::vector<double> secondary_ir;  // optional extra path, composed
  std::optional<SensorNoiseSpec> sensor_noise;
  // A priori SNR at the error mic; scales all noises jointly when set, then
  // rescales the mixture to the desired source power.
  std::optional<double> snr_db;
  double fs = 8000.0;
  int L = 128;
  double bulk_delay = kDefaultBulkDelay;
  int ref_mic = -1;  // -1 selects the mic closest to the desired source

  void Validate() const;
  int ReferenceMic() const;
};

struct RenderedScene {
  double fs = 0.0;
  int L = 0;
  ArrayGeometry geometry;
  int error_mic = 0;
  int ref_mic = 0;
  double bulk_delay = 0.0;
  double desired_doa = 0.0;
  // [mic][n]
  std::vector<std::vector<double>> desired;
  std::vector<std::vector<double>> noise;
  std::vector<double> d;
  std::vector<ImpulseResponse> reirs;  // desired direction, per mic index
  ImpulseResponse g;
  double sensor_noise_power = 0.0;

  int num_mics() const { return static_cast<int>(desired.size()); }
  int length() const { return static_cast<int>(d.size()); }
  std::vector<double> Mic(int k) const;
  const std::vector<double>& s() const { return desired[error_mic]; }
  const std::vector<double>& v() const { return noise[error_mic]; }
};

std::vector<ImpulseResponse> SynthReirs(const ArrayGeometry& geometry,
                                        double doa_deg, int ref_mic, double fs,
                                        int L,
                                        double bulk_delay = kDefaultBulkDelay);

ImpulseResponse SecondaryPath(const AcousticScene& scene);

RenderedScene Render(const AcousticScene& scene, int duration);

RenderedScene AddSensorNoise(const RenderedScene& rendered, double ssnr_db,
                             const std::vector<int>& affected,
                             int reference_mic, uint64_t seed);

}  // namespace sanc

#endif  // SANC_SCENE_SCENE_H_
