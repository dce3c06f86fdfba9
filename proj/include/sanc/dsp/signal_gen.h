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

#ifndef SANC_DSP_SIGNAL_GEN_H_
#define SANC_DSP_SIGNAL_GEN_H_

#include <cstdint>
#include <string>

#include "sanc/dsp/signal.h"

namespace sanc {

enum class SignalKind { kWhite, kPink, kTone, kSpeechLike };

struct SignalDescriptor {
  SignalKind kind = SignalKind::kPink;
  uint64_t seed = 1;
  double tone_hz = 1000.0;
  // When non-empty the signal is read from this WAV file instead.
  std::string wav_path;
};

SignalKind ParseSignalKind(const std::string& name);
std::string SignalKindName(SignalKind kind);

// Unit RMS, deterministic for a fixed seed.
Signal GenSignal(SignalKind kind, int length, uint64_t seed, double fs,
                 double tone_hz = 1000.0);
Signal GenSignal(const SignalDescriptor& desc, int length, double fs);

// Zeros and poles (Hz) of the 6-section pink shaping filter.
struct PinkSection {
  double zero_hz;
  double pole_hz;
};
std::vector<PinkSection> PinkShapingSections(double fs);

}  // namespace sanc

#endif  // SANC_DSP_SIGNAL_GEN_H_
