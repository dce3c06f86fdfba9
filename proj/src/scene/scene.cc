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

#include "sanc/scene/scene.h"

#include <cmath>
#include <random>

#include "sanc/dsp/filters.h"
#include "sanc/error.h"

namespace sanc {
namespace {

std::vector<ImpulseResponse> RenderKernels(const ArrayGeometry& geometry,
                                           double doa, int ref, double fs,
                                           double bulk_delay, int min_length) {
  std::vector<double> delays(geometry.size());
  int length = min_length;
  for (int k = 0; k < geometry.size(); ++k) {
    delays[k] = bulk_delay + RelativeDelaySamples(geometry, k, ref, doa, fs);
    if (delays[k] < 0.0) {
      throw Error(ErrorCode::kBulkDelayTooSmall,
                  "mic " + std::to_string(k) + " needs extra bulk delay " +
                      std::to_string(-delays[k]));
    }
    length = std::max(length, static_cast<int>(std::ceil(delays[k])) +
                                  kFractionalDelayHalfWidth + 1);
  }
  std::vector<ImpulseResponse> out;
  for (int k = 0; k < geometry.size(); ++k) {
    out.push_back(FractionalDelayIr(delays[k], length, fs));
  }
  return out;
}

std::vector<double> SourceSignal(const SourceSpec& src, int n, double fs) {
  Signal x = GenSignal(src.signal, n, fs);
  const double gain = std::pow(10.0, src.level_db / 20.0);
  for (double& v : x.samples) v *= gain;
  return x.samples;
}

}  // namespace

void AcousticScene::Validate() const {
  geometry.Validate();
  if (!(fs > 0.0)) throw Error(ErrorCode::kConfiguration, "fs must be > 0");
  if (L < 1) throw Error(ErrorCode::kInvalidDimension, "L must be >= 1");
  if (secondary_delay < 0) {
    throw Error(ErrorCode::kConfiguration, "secondary delay < 0");
  }
  if (L < secondary_delay + 1) {
    throw Error(ErrorCode::kCausality, "L must exceed the secondary delay");
  }
  if (!(desired.distance_m > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "source distance must be > 0");
  }
  for (const auto& n : noises) {
    if (!(n.distance_m > 0.0)) {
      throw Error(ErrorCode::kConfiguration, "source distance must be > 0");
    }
  }
  if (ref_mic >= 0 &&
      (ref_mic >= geometry.size() || ref_mic == geometry.error_mic_index)) {
    throw Error(ErrorCode::kConfiguration, "invalid reference mic");
  }
  if (sensor_noise) {
    for (int k : sensor_noise->affected) {
      if (k < 0 || k >= geometry.size()) {
        throw Error(ErrorCode::kConfiguration, "sensor-noise mic index");
      }
    }
    if (sensor_noise->reference_mic < 0 ||
        sensor_noise->reference_mic >= geometry.size()) {
      throw Error(ErrorCode::kConfiguration, "sensor-noise reference mic");
    }
  }
}

int AcousticScene::ReferenceMic() const {
  return ref_mic >= 0 ? ref_mic
                      : DefaultReferenceMic(geometry, desired.doa_deg);
}

std::vector<double> RenderedScene::Mic(int k) const {
  std::vector<double> x = desired[k];
  for (size_t n = 0; n < x.size(); ++n) x[n] += noise[k][n];
  return x;
}

std::vector<ImpulseResponse> SynthReirs(const ArrayGeometry& geometry,
                                        double doa_deg, int ref_mic, double fs,
                                        int L, double bulk_delay) {
  if (ref_mic < 0 || ref_mic >= geometry.size()) {
    throw Error(ErrorCode::kConfiguration, "invalid reference mic");
  }
  std::vector<ImpulseResponse> out;
  for (int k = 0; k < geometry.size(); ++k) {
    const double delay =
        bulk_delay + RelativeDelaySamples(geometry, k, ref_mic, doa_deg, fs);
    if (delay < -1e-9) {
      throw Error(ErrorCode::kBulkDelayTooSmall,
                  "mic " + std::to_string(k) + " needs extra bulk delay " +
                      std::to_string(-delay));
    }
    out.push_back(FractionalDelayIr(std::max(delay, 0.0), L, fs));
  }
  return out;
}

ImpulseResponse SecondaryPath(const AcousticScene& scene) {
  if (scene.secondary_delay < 0) {
    throw Error(ErrorCode::kConfiguration, "secondary delay < 0");
  }
  if (scene.secondary_delay >= scene.L) {
    throw Error(ErrorCode::kCausality, "secondary delay >= L");
  }
  std::vector<double> taps(scene.L, 0.0);
  if (scene.secondary_ir.empty()) {
    taps[scene.secondary_delay] = 1.0;
  } else {
    for (size_t i = 0; i < scene.secondary_ir.size(); ++i) {
      const size_t n = scene.secondary_delay + i;
      if (n < taps.size()) taps[n] = scene.secondary_ir[i];
    }
  }
  return ImpulseResponse(std::move(taps), scene.fs);
}

RenderedScene Render(const AcousticScene& scene, int duration) {
  scene.Validate();
  if (duration < 1) throw Error(ErrorCode::kInvalidDimension, "duration < 1");
  const int K = scene.geometry.size();
  const int ref = scene.ReferenceMic();
  RenderedScene r;
  r.fs = scene.fs;
  r.L = scene.L;
  r.geometry = scene.geometry;
  r.error_mic = scene.geometry.error_mic_index;
  r.ref_mic = ref;
  r.bulk_delay = scene.bulk_delay;
  r.desired_doa = scene.desired.doa_deg;
  r.desired.assign(K, std::vector<double>(duration, 0.0));
  r.noise.assign(K, std::vector<double>(duration, 0.0));
  r.reirs = SynthReirs(scene.geometry, scene.desired.doa_deg, ref, scene.fs,
                       scene.L, scene.bulk_delay);
  r.g = SecondaryPath(scene);

  auto add_source = [&](const SourceSpec& src,
                        std::vector<std::vector<double>>& dst) {
    const auto sig = SourceSignal(src, duration, scene.fs);
    const auto kernels = RenderKernels(scene.geometry, src.doa_deg, ref,
                                       scene.fs, scene.bulk_delay, scene.L);
    for (int k = 0; k < K; ++k) {
      const auto y = FirFilter(kernels[k].taps, sig);
      for (int n = 0; n < duration; ++n) dst[k][n] += y[n];
    }
  };
  if (scene.desired_active) add_source(scene.desired, r.desired);
  for (const auto& src : scene.noises) add_source(src, r.noise);

  if (scene.snr_db && scene.desired_active && !scene.noises.empty()) {
    const double ps = MeanSquare(r.desired[r.error_mic]);
    const double pv = MeanSquare(r.noise[r.error_mic]);
    if (pv > 0.0) {
      const double gain =
          std::sqrt(ps / (pv * std::pow(10.0, *scene.snr_db / 10.0)));
      for (auto& ch : r.noise) {
        for (double& v : ch) v *= gain;
      }
      // Mixture at the error mic normalized to the desired source power.
      const double c = std::sqrt(ps / (ps + gain * gain * pv));
      for (auto* comp : {&r.desired, &r.noise}) {
        for (auto& ch : *comp) {
          for (double& v : ch) v *= c;
        }
      }
    }
  }
  r.d.resize(duration);
  for (int n = 0; n < duration; ++n) {
    r.d[n] = r.desired[r.error_mic][n] + r.noise[r.error_mic][n];
  }
  if (scene.sensor_noise) {
    const auto& sn = *scene.sensor_noise;
    r = AddSensorNoise(r, sn.ssnr_db, sn.affected, sn.reference_mic, sn.seed);
  }
  return r;
}

RenderedScene AddSensorNoise(const RenderedScene& rendered, double ssnr_db,
                             const std::vector<int>& affected,
                             int reference_mic, uint64_t seed) {
  RenderedScene out = rendered;
  if (affected.empty()) return out;
  const int K = rendered.num_mics();
  if (reference_mic < 0 || reference_mic >= K) {
    throw Error(ErrorCode::kConfiguration, "sensor-noise reference mic");
  }
  const double clean = MeanSquare(rendered.Mic(reference_mic));
  if (!(clean > 0.0)) {
    throw Error(ErrorCode::kUndefinedMetric,
                "SsNR undefined: zero clean power at reference mic");
  }
  const double var = clean / std::pow(10.0, ssnr_db / 10.0);
  const double sigma = std::sqrt(var);
  for (int k : affected) {
    if (k < 0 || k >= K) {
      throw Error(ErrorCode::kConfiguration, "sensor-noise mic index");
    }
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<uint64_t>(k));
    std::normal_distribution<double> dist(0.0, sigma);
    for (double& v : out.noise[k]) v += dist(rng);
  }
  for (int n = 0; n < out.length(); ++n) {
    out.d[n] = out.desired[out.error_mic][n] + out.noise[out.error_mic][n];
  }
  out.sensor_noise_power = var;
  return out;
}

}  // namespace sanc
