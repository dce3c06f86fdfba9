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

#include <gtest/gtest.h>

#include <cmath>

#include "sanc/dsp/signal.h"
#include "sanc/error.h"
#include "sanc/scene/geometry.h"
#include "sanc/scene/scene.h"
#include "sanc/scene/scene_json.h"

namespace sanc {
namespace {

AcousticScene DeskScene() {
  AcousticScene s;
  s.geometry = BuildGeometry(GeometryPreset::kGlasses6);
  s.desired.doa_deg = 0.0;
  s.desired.signal.kind = SignalKind::kSpeechLike;
  s.desired.signal.seed = 1;
  SourceSpec n;
  n.doa_deg = 60.0;
  n.signal.seed = 2;
  s.noises.push_back(n);
  return s;
}

TEST(Geometry, Glasses6) {
  const auto g = BuildGeometry(GeometryPreset::kGlasses6);
  EXPECT_EQ(g.size(), 6);
  EXPECT_EQ(g.error_mic_index, 5);
  const auto order = g.ChannelOrder();
  EXPECT_EQ(order.back(), 5);
}

TEST(Geometry, CircularCenterIsRingCentroid) {
  const auto g = BuildGeometry(GeometryPreset::kCircular8Plus1);
  ASSERT_EQ(g.size(), 9);
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (int k = 0; k < 8; ++k) {
    c += g.mic_positions[k];
    EXPECT_NEAR((g.mic_positions[k] - g.mic_positions[8]).norm(), 0.10, 1e-12);
  }
  EXPECT_LT((c / 8.0 - g.mic_positions[g.error_mic_index]).norm(), 1e-12);
}

TEST(Geometry, CustomPreservedAndValidated) {
  std::vector<Eigen::Vector3d> p = {{0, 0, 0}, {0.1, 0, 0}};
  const auto g = BuildGeometry(GeometryPreset::kCustom, p, 1);
  EXPECT_EQ(g.mic_positions[1], p[1]);
  EXPECT_THROW(BuildGeometry(GeometryPreset::kCustom, {{0, 0, 0}}, 0), Error);
}

TEST(Geometry, DelayPeriodicityAndOppositeDoa) {
  const auto g = BuildGeometry(GeometryPreset::kGlasses6);
  for (double doa : {0.0, 37.0, 145.0, 300.0}) {
    for (int k = 0; k < g.size(); ++k) {
      const double a = RelativeDelaySamples(g, k, 0, doa, 8000.0);
      EXPECT_NEAR(a, RelativeDelaySamples(g, k, 0, doa + 360.0, 8000.0), 1e-9);
      EXPECT_NEAR(a, -RelativeDelaySamples(g, k, 0, doa + 180.0, 8000.0), 1e-9);
    }
  }
}

TEST(Reirs, AxialPairDelayIsEightSamples) {
  std::vector<Eigen::Vector3d> p = {{0, 0, 0}, {0.343, 0, 0}};
  const auto g = BuildGeometry(GeometryPreset::kCustom, p, 0);
  EXPECT_NEAR(RelativeDelaySamples(g, 0, 1, 0.0, 8000.0), 8.0, 1e-9);
  const auto h = SynthReirs(g, 0.0, 1, 8000.0, 64, 8.0);
  EXPECT_NEAR(h[0].taps[16], 1.0, 1e-12);
  EXPECT_NEAR(h[1].taps[8], 1.0, 1e-12);
}

TEST(Reirs, ReferenceIsBulkDelayDelta) {
  const auto g = BuildGeometry(GeometryPreset::kGlasses6);
  const int ref = DefaultReferenceMic(g, 0.0);
  const auto h = SynthReirs(g, 0.0, ref, 8000.0, 128, 8.0);
  for (int n = 0; n < 128; ++n) EXPECT_EQ(h[ref].taps[n], n == 8 ? 1.0 : 0.0);
  const auto h0 = SynthReirs(g, 0.0, ref, 8000.0, 128, 0.0);
  EXPECT_EQ(h0[ref].taps[0], 1.0);
}

TEST(Reirs, BroadsideGivesIdenticalResponses) {
  std::vector<Eigen::Vector3d> p = {{0, -0.05, 0}, {0, 0.05, 0}, {0.02, 0, 0}};
  const auto g = BuildGeometry(GeometryPreset::kCustom, p, 2);
  const auto h = SynthReirs(g, 0.0, 0, 8000.0, 64, 8.0);
  for (int n = 0; n < 64; ++n) EXPECT_NEAR(h[0].taps[n], h[1].taps[n], 1e-15);
}

TEST(Reirs, BulkDelayTooSmall) {
  const auto g = BuildGeometry(GeometryPreset::kGlasses6);
  try {
    SynthReirs(g, 180.0, 0, 48000.0, 128, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBulkDelayTooSmall);
  }
}

TEST(SecondaryPath, DelayAndComposition) {
  AcousticScene s = DeskScene();
  s.fs = 48000.0;
  s.L = 768;
  s.secondary_delay = 10;
  auto g = SecondaryPath(s);
  EXPECT_EQ(g.taps[10], 1.0);
  EXPECT_NEAR(10.0 / s.fs * 1e6, 208.3, 0.05);
  s.secondary_ir = {1.0, 0.5};
  g = SecondaryPath(s);
  EXPECT_EQ(g.taps[10], 1.0);
  EXPECT_EQ(g.taps[11], 0.5);
  s.secondary_ir.clear();
  s.secondary_delay = 0;
  EXPECT_EQ(SecondaryPath(s).taps[0], 1.0);
  s.secondary_delay = 768;
  try {
    SecondaryPath(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCausality);
  }
}

TEST(Render, DisturbanceIsSumOfComponents) {
  const auto r = Render(DeskScene(), 16000);
  for (int n = 0; n < r.length(); ++n) {
    EXPECT_EQ(r.d[n], r.s()[n] + r.v()[n]);
  }
}

TEST(Render, NoNoiseMeansDisturbanceIsDesired) {
  AcousticScene s = DeskScene();
  s.noises.clear();
  const auto r = Render(s, 8000);
  EXPECT_EQ(r.d, r.s());
}

TEST(Render, ComponentsMatchSeparateRenders) {
  AcousticScene full = DeskScene();
  AcousticScene only_desired = full;
  only_desired.noises.clear();
  const auto a = Render(full, 8000);
  const auto b = Render(only_desired, 8000);
  for (int k = 0; k < a.num_mics(); ++k) EXPECT_EQ(a.desired[k], b.desired[k]);
}

TEST(Render, UncorrelatedNoisePowersAdd) {
  AcousticScene s = DeskScene();
  s.desired_active = false;
  const auto one = Render(s, 400000);
  SourceSpec n2 = s.noises[0];
  n2.doa_deg = 200.0;
  n2.signal.seed = 77;
  s.noises.push_back(n2);
  const auto two = Render(s, 400000);
  const double ratio = MeanSquare(two.v()) / MeanSquare(one.v());
  EXPECT_NEAR(10.0 * std::log10(ratio), 10.0 * std::log10(2.0), 0.2);
}

TEST(Render, Linearity) {
  AcousticScene s = DeskScene();
  const auto a = Render(s, 4000);
  s.desired.level_db = 20.0 * std::log10(3.0);
  s.noises[0].level_db = 20.0 * std::log10(3.0);
  const auto b = Render(s, 4000);
  for (int n = 0; n < 4000; ++n) EXPECT_NEAR(b.d[n], 3.0 * a.d[n], 1e-12);
}

TEST(Render, SnrIsAppliedAtErrorMic) {
  AcousticScene s = DeskScene();
  s.snr_db = -5.0;
  const auto r = Render(s, 80000);
  EXPECT_NEAR(10.0 * std::log10(MeanSquare(r.s()) / MeanSquare(r.v())), -5.0, 1e-9);
}

TEST(SensorNoise, PowerFollowsSsnr) {
  const auto r = Render(DeskScene(), 200000);
  const double clean = MeanSquare(r.Mic(4));
  for (double ssnr : {0.0, -30.0}) {
    const auto n = AddSensorNoise(r, ssnr, {0, 2, 3, 4}, 4, 9);
    EXPECT_NEAR(n.sensor_noise_power, clean / std::pow(10.0, ssnr / 10.0),
                1e-9 * n.sensor_noise_power);
    std::vector<double> diff(r.length());
    for (int i = 0; i < r.length(); ++i) diff[i] = n.noise[2][i] - r.noise[2][i];
    EXPECT_NEAR(MeanSquare(diff) / n.sensor_noise_power, 1.0, 0.02);
    EXPECT_EQ(n.noise[1], r.noise[1]);
  }
  const auto same = AddSensorNoise(r, 0.0, {}, 4, 9);
  EXPECT_EQ(same.noise, r.noise);
  EXPECT_EQ(same.d, r.d);
}

TEST(SensorNoise, ZeroReferencePowerIsUndefined) {
  AcousticScene s = DeskScene();
  s.desired_active = false;
  s.noises.clear();
  const auto r = Render(s, 1000);
  try {
    AddSensorNoise(r, 0.0, {0}, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedMetric);
  }
}

TEST(SceneJson, RoundTripAndUnknownKeys) {
  AcousticScene s = DeskScene();
  s.snr_db = 3.0;
  const auto j = SceneToJson(s);
  const auto back = ParseSceneJson(j).scene;
  EXPECT_EQ(SceneToJson(back), j);
  auto bad = j;
  bad["nosie"] = 1;
  EXPECT_THROW(ParseSceneJson(bad), Error);
  auto wrong_version = j;
  wrong_version["version"] = 99;
  EXPECT_THROW(ParseSceneJson(wrong_version), Error);
}

}  // namespace
}  // namespace sanc
