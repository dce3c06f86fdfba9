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

#include "sanc/dsp/filters.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sanc/error.h"

namespace sanc {

void ImpulseResponse::Validate() const {
  if (taps.empty()) throw Error(ErrorCode::kInvalidDimension, "empty IR");
  for (double t : taps) {
    if (!std::isfinite(t)) throw Error(ErrorCode::kNumerical, "non-finite tap");
  }
}

void Signal::Validate() const {
  for (double s : samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kNumerical, "non-finite sample");
    }
  }
}

double MeanSquare(const std::vector<double>& x, int begin, int end) {
  if (begin < 0 || end > static_cast<int>(x.size()) || end <= begin) {
    throw Error(ErrorCode::kInvalidDimension, "mean-square window");
  }
  double acc = 0.0;
  for (int n = begin; n < end; ++n) acc += x[n] * x[n];
  return acc / (end - begin);
}

double MeanSquare(const std::vector<double>& x) {
  return MeanSquare(x, 0, static_cast<int>(x.size()));
}

std::vector<double> FirFilter(const std::vector<double>& taps,
                              const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  // Skip exact zeros; pure delays and sparse paths dominate here.
  std::vector<std::pair<int, double>> nz;
  for (int m = 0; m < static_cast<int>(taps.size()); ++m) {
    if (taps[m] != 0.0) nz.emplace_back(m, taps[m]);
  }
  std::vector<double> y(n, 0.0);
  for (const auto& [m, g] : nz) {
    for (int i = m; i < n; ++i) y[i] += g * x[i - m];
  }
  return y;
}

Signal FirFilter(const ImpulseResponse& ir, const Signal& x) {
  if (ir.sample_rate != x.sample_rate) {
    throw Error(ErrorCode::kConfiguration, "sample-rate mismatch");
  }
  return Signal(FirFilter(ir.taps, x.samples), x.sample_rate);
}

std::vector<double> Convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> y(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (size_t j = 0; j < b.size(); ++j) y[i + j] += a[i] * b[j];
  }
  return y;
}

std::complex<double> FreqResponse(const std::vector<double>& taps,
                                  double omega) {
  std::complex<double> acc = 0.0;
  for (size_t n = 0; n < taps.size(); ++n) {
    acc += taps[n] * std::polar(1.0, -omega * static_cast<double>(n));
  }
  return acc;
}

std::vector<std::complex<double>> TransferZeros(
    const std::vector<double>& taps) {
  int first = 0;
  int last = static_cast<int>(taps.size()) - 1;
  while (first <= last && taps[first] == 0.0) ++first;
  while (last >= first && taps[last] == 0.0) --last;
  const int degree = last - first;
  if (degree <= 0) return {};
  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(degree, degree);
  for (int j = 0; j < degree; ++j) c(0, j) = -taps[first + 1 + j] / taps[first];
  for (int i = 1; i < degree; ++i) c(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical, "root finding failed");
  }
  std::vector<std::complex<double>> roots(degree);
  for (int i = 0; i < degree; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

double MaxZeroMagnitude(const std::vector<double>& taps) {
  double m = 0.0;
  for (const auto& z : TransferZeros(taps)) m = std::max(m, std::abs(z));
  return m;
}

double BesselI0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double KaiserWindow(double x, double half_width, double beta) {
  const double r = x / half_width;
  if (std::abs(r) >= 1.0) return 0.0;
  return BesselI0(beta * std::sqrt(1.0 - r * r)) / BesselI0(beta);
}

}  // namespace sanc
