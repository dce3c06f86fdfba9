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

#include "sanc/dsp/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "sanc/error.h"

namespace sanc {
namespace {

uint32_t U32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t U16(const uint8_t* p) { return p[0] | (p[1] << 8); }

void Put32(std::ofstream& f, uint32_t v) {
  const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                     static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  f.write(b, 4);
}
void Put16(std::ofstream& f, uint16_t v) {
  const char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  f.write(b, 2);
}

}  // namespace

Signal ReadWav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)),
                           std::istreambuf_iterator<char>());
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kIo, "not a RIFF/WAVE file: " + path);
  }
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;
  size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const uint8_t* chunk = buf.data() + pos;
    const uint32_t size = U32(chunk + 4);
    if (pos + 8 + size > buf.size()) break;
    if (std::memcmp(chunk, "fmt ", 4) == 0 && size >= 16) {
      format = U16(chunk + 8);
      channels = U16(chunk + 10);
      rate = U32(chunk + 12);
      bits = U16(chunk + 22);
      if (format == 0xFFFE && size >= 40) format = U16(chunk + 32);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = size;
    }
    pos += 8 + size + (size & 1);
  }
  if (data == nullptr || rate == 0) {
    throw Error(ErrorCode::kIo, "missing fmt or data chunk");
  }
  if (channels != 1) throw Error(ErrorCode::kIo, "only mono WAV supported");
  std::vector<double> x;
  if (format == 1 && bits == 16) {
    for (uint32_t i = 0; i + 2 <= data_size; i += 2) {
      x.push_back(static_cast<int16_t>(U16(data + i)) / 32768.0);
    }
  } else if (format == 1 && bits == 24) {
    for (uint32_t i = 0; i + 3 <= data_size; i += 3) {
      int32_t v = data[i] | (data[i + 1] << 8) | (data[i + 2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      x.push_back(v / 8388608.0);
    }
  } else if (format == 3 && bits == 32) {
    for (uint32_t i = 0; i + 4 <= data_size; i += 4) {
      const uint32_t u = U32(data + i);
      float v;
      std::memcpy(&v, &u, 4);
      x.push_back(v);
    }
  } else {
    throw Error(ErrorCode::kIo, "unsupported WAV encoding");
  }
  return Signal(std::move(x), static_cast<double>(rate));
}

void WriteWav(const std::string& path, const Signal& x, WavFormat format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  const uint16_t bits = format == WavFormat::kPcm16   ? 16
                        : format == WavFormat::kPcm24 ? 24
                                                      : 32;
  const uint32_t bytes = bits / 8;
  const uint32_t data_size = bytes * static_cast<uint32_t>(x.size());
  const uint32_t rate = static_cast<uint32_t>(x.sample_rate);
  f.write("RIFF", 4);
  Put32(f, 36 + data_size);
  f.write("WAVEfmt ", 8);
  Put32(f, 16);
  Put16(f, format == WavFormat::kFloat32 ? 3 : 1);
  Put16(f, 1);
  Put32(f, rate);
  Put32(f, rate * bytes);
  Put16(f, static_cast<uint16_t>(bytes));
  Put16(f, bits);
  f.write("data", 4);
  Put32(f, data_size);
  for (double v : x.samples) {
    if (format == WavFormat::kFloat32) {
      const float fv = static_cast<float>(v);
      uint32_t u;
      std::memcpy(&u, &fv, 4);
      Put32(f, u);
    } else {
      const double scale = format == WavFormat::kPcm16 ? 32767.0 : 8388607.0;
      const int32_t q = static_cast<int32_t>(
          std::lround(std::max(-1.0, std::min(1.0, v)) * scale));
      const char b[3] = {static_cast<char>(q), static_cast<char>(q >> 8),
                         static_cast<char>(q >> 16)};
      f.write(b, bytes);
    }
  }
}

}  // namespace sanc
