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

#ifndef SANC_DSP_WAV_H_
#define SANC_DSP_WAV_H_

#include <string>

#include "sanc/dsp/signal.h"

namespace sanc {

enum class WavFormat { kPcm16, kPcm24, kFloat32 };

// Mono PCM 16/24-bit or 32-bit float.
Signal ReadWav(const std::string& path);
void WriteWav(const std::string& path, const Signal& x, WavFormat format);

}  // namespace sanc

#endif  // SANC_DSP_WAV_H_
