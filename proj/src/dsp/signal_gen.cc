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

#include "sanc/dsp/signal_gen.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sanc/dsp/wav.h"
#include "sanc/error.h"

namespace sanc {
namespace {

constexpr double kPinkLowestPoleHz = 20.0;
constexpr int kPinkSections = 6;

void NormalizeRms(std::vector<double>& x) {
  double ms = 0.0;
  for (double v : x) ms += v * v;
  ms /= static_cast<double>(x.size());
  if (ms <= 0.0) return;
  const double g = 1.0 / std::sqrt(ms);
  for (double& v : x) v *= g;
}

std::vector<double> White(int length, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(length);
  for (double& v : x) v = dist(rng);
  return x;
}

std::vector<double> Pink(int length, uint64_t seed, double fs) {
  const auto sections = PinkShapingSections(fs);
  const int warmup = static_cast<int>(fs / 4.0);
  std::vector<double> x = White(length + warmup, seed);
  for (const auto& s : sections) {
    const double zc = std::exp(-2.0 * std::numbers::pi * s.zero_hz / fs);
    const double pc = std::exp(-2.0 * std::numbers::pi * s.pole_hz / fs);
    double xprev = 0.0;
    double yprev = 0.0;
    for (double& v : x) {
      const double y = v - zc * xprev + pc * yprev;
      xprev = v;
      yprev = y;
      v = y;
    }
  }
  return std::vector<double>(x.begin() + warmup, x.end());
}

// 4 Hz syllabic modulation gated by seeded talk spurts and pauses.
std::vector<double> SpeechEnvelope(int length, uint64_t seed, double fs) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> talk(0.6, 1.8);
  std::uniform_real_distribution<double> pause(0.2, 0.6);
  std::vector<double> gate(length, 0.0);
  int n = 0;
  bool active = true;
  const int ramp = static_cast<int>(0.01 * fs);
  while (n < length) {
    const int seg = static_cast<int>((active ? talk(rng) : pause(rng)) * fs);
    for (int i = 0; i < seg && n + i < length; ++i) {
      double g = active ? 1.0 : 0.0;
      if (active && ramp > 0) {
        g = std::min({1.0, static_cast<double>(i) / ramp,
                      static_cast<double>(seg - i) / ramp});
      }
      gate[n + i] = g;
    }
    n += seg;
    active = !active;
  }
  std::vector<double> env(length);
  for (int i = 0; i < length; ++i) {
    const double am =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * 4.0 * i / fs);
    env[i] = (0.1 + 0.9 * am) * gate[i];
  }
  return env;
}

}  // namespace

std::vector<PinkSection> PinkShapingSections(double fs) {
  const double fhi = 0.45 * fs;
  const double r =
      std::pow(fhi / kPinkLowestPoleHz, 1.0 / (2.0 * kPinkSections));
  std::vector<PinkSection> out;
  for (int i = 0; i < kPinkSections; ++i) {
    out.push_back({kPinkLowestPoleHz * std::pow(r, 2 * i + 1),
                   kPinkLowestPoleHz * std::pow(r, 2 * i)});
  }
  return out;
}

SignalKind ParseSignalKind(const std::string& name) {
  if (name == "white") return SignalKind::kWhite;
  if (name == "pink") return SignalKind::kPink;
  if (name == "tone") return SignalKind::kTone;
  if (name == "speech_like") return SignalKind::kSpeechLike;
  throw Error(ErrorCode::kConfiguration, "unknown signal kind '" + name + "'");
}

std::string SignalKindName(SignalKind kind) {
  switch (kind) {
    case SignalKind::kWhite: return "white";
    case SignalKind::kPink: return "pink";
    case SignalKind::kTone: return "tone";
    case SignalKind::kSpeechLike: return "speech_like";
  }
  return "unknown";
}

Signal GenSignal(SignalKind kind, int length, uint64_t seed, double fs,
                 double tone_hz) {
  if (length < 1) throw Error(ErrorCode::kInvalidDimension, "length < 1");
  if (!(fs > 0.0)) throw Error(ErrorCode::kConfiguration, "fs <= 0");
  std::vector<double> x;
  switch (kind) {
    case SignalKind::kWhite:
      x = White(length, seed);
      break;
    case SignalKind::kPink:
      x = Pink(length, seed, fs);
      break;
    case SignalKind::kTone: {
      if (!(tone_hz > 0.0) || !(tone_hz < fs / 2.0)) {
        throw Error(ErrorCode::kConfiguration, "tone frequency");
      }
      x.resize(length);
      for (int n = 0; n < length; ++n) {
        x[n] = std::sqrt(2.0) *
               std::sin(2.0 * std::numbers::pi * tone_hz * n / fs);
      }
      break;
    }
    case SignalKind::kSpeechLike: {
      x = Pink(length, seed, fs);
      const auto env = SpeechEnvelope(length, seed, fs);
      for (int n = 0; n < length; ++n) x[n] *= env[n];
      break;
    }
    default:
      throw Error(ErrorCode::kConfiguration, "unknown signal kind");
  }
  NormalizeRms(x);
  return Signal(std::move(x), fs);
}

Signal GenSignal(const SignalDescriptor& desc, int length, double fs) {
  if (desc.wav_path.empty()) {
    return GenSignal(desc.kind, length, desc.seed, fs, desc.tone_hz);
  }
  Signal w = ReadWav(desc.wav_path);
  if (w.sample_rate != fs) {
    throw Error(ErrorCode::kConfiguration, "WAV sample rate mismatch");
  }
  if (w.size() < length) {
    throw Error(ErrorCode::kInsufficientData, "WAV shorter than duration");
  }
  w.samples.resize(length);
  NormalizeRms(w.samples);
  return w;
}

}  // namespace sanc
