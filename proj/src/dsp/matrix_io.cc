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

#include "sanc/dsp/matrix_io.h"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "sanc/error.h"

namespace sanc {
namespace {
constexpr char kMagic[8] = {'S', 'A', 'N', 'C', 'M', 'A', 'T', '1'};
}  // namespace

void WriteMatrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path);
  f.write(kMagic, 8);
  const int64_t dims[2] = {m.rows(), m.cols()};
  f.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      f.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
}

Eigen::MatrixXd ReadMatrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path);
  char magic[8];
  int64_t dims[2];
  f.read(magic, 8);
  f.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!f || std::memcmp(magic, kMagic, 8) != 0 || dims[0] < 0 || dims[1] < 0) {
    throw Error(ErrorCode::kIo, "bad matrix header in " + path);
  }
  Eigen::MatrixXd m(dims[0], dims[1]);
  for (int64_t i = 0; i < dims[0]; ++i) {
    for (int64_t j = 0; j < dims[1]; ++j) {
      f.read(reinterpret_cast<char*>(&m(i, j)), sizeof(double));
    }
  }
  if (!f) throw Error(ErrorCode::kIo, "truncated matrix file " + path);
  return m;
}

}  // namespace sanc
