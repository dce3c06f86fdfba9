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

#include <cmath>
#include <numbers>

#include "sanc/dsp/filters.h"
#include "sanc/error.h"

namespace sanc {

ImpulseResponse FractionalDelayIr(double delay, int length, double fs,
                                  int half_width) {
  if (length < 1) throw Error(ErrorCode::kInvalidDimension, "length < 1");
  if (!(delay >= 0.0)) {
    throw Error(ErrorCode::kCausality, "negative delay");
  }
  if (delay >= length) {
    throw Error(ErrorCode::kCausality, "delay exceeds kernel length");
  }
  if (half_width < 1) {
    throw Error(ErrorCode::kInvalidDimension, "half width < 1");
  }
  const double rounded = std::round(delay);
  const bool integer = std::abs(delay - rounded) < 1e-12;
  std::vector<double> taps(length, 0.0);
  if (integer) {
    taps[static_cast<int>(rounded)] = 1.0;
    return ImpulseResponse(std::move(taps), fs);
  }
  if (delay + half_width >= length) {
    throw Error(ErrorCode::kInvalidDimension,
                "delay + window half-width must be < length");
  }
  const double w = static_cast<double>(half_width);
  for (int n = 0; n < length; ++n) {
    const double x = n - delay;
    if (std::abs(x) >= w) continue;
    const double px = std::numbers::pi * x;
    taps[n] = std::sin(px) / px *
              KaiserWindow(x, w, kFractionalDelayKaiserBeta);
  }
  return ImpulseResponse(std::move(taps), fs);
}

}  // namespace sanc
