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

#ifndef SANC_DSP_MATRIX_IO_H_
#define SANC_DSP_MATRIX_IO_H_

#include <Eigen/Dense>
#include <string>

namespace sanc {

// Binary layout: 8-byte magic "SANCMAT1", int64 rows, int64 cols, then
// rows*cols little-endian float64 values in row-major order.
void WriteMatrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd ReadMatrix(const std::string& path);

}  // namespace sanc

#endif  // SANC_DSP_MATRIX_IO_H_
