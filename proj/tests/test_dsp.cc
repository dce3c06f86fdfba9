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
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>

#include "sanc/dsp/filters.h"
#include "sanc/dsp/iir.h"
#include "sanc/dsp/matrix_io.h"
#include "sanc/dsp/signal_gen.h"
#include "sanc/dsp/spectrum.h"
#include "sanc/dsp/toeplitz.h"
#include "sanc/dsp/wav.h"
#include "sanc/error.h"

namespace sanc {
namespace {

std::vector<double> RandomVector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double Db(double x) { return 20.0 * std::log10(x); }

TEST(Toeplitz, MatchesFirFilterOnRandomBlocks) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int L = 1 + trial * 3;
    const auto h = RandomVector(1 + trial % 11, rng);
    const auto x = RandomVector(L, rng);
    const Eigen::MatrixXd T = MakeToeplitz(h, L);
    const Eigen::VectorXd y = T * Eigen::Map<const Eigen::VectorXd>(x.data(), L);
    const auto ref = FirFilter(h, x);
    for (int i = 0; i < L; ++i) EXPECT_NEAR(y[i], ref[i], 1e-12);
  }
}

TEST(Toeplitz, DelayedImpulseHasZeroLeadingRowsAndReducedRank) {
  const int L = 16;
  for (int m = 0; m < 6; ++m) {
    std::vector<double> h(m + 1, 0.0);
    h[m] = 1.0;
    const Eigen::MatrixXd T = MakeToeplitz(h, L);
    EXPECT_EQ(T.topRows(m).norm(), 0.0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(T);
    EXPECT_EQ(lu.rank(), L - m);
  }
}

TEST(Toeplitz, ConvolutionMatrixMatchesFullConvolution) {
  std::mt19937_64 rng(3);
  const auto h = RandomVector(9, rng);
  const auto u = RandomVector(12, rng);
  const Eigen::MatrixXd C = ConvolutionMatrix(h, 20, 12);
  const Eigen::VectorXd y = C * Eigen::Map<const Eigen::VectorXd>(u.data(), 12);
  const auto ref = Convolve(h, u);
  ASSERT_EQ(ref.size(), 20u);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(y[i], ref[i], 1e-12);
}

TEST(Toeplitz, BlockDiagonalLayout) {
  const Eigen::MatrixXd b = Eigen::MatrixXd::Constant(2, 2, 3.0);
  const Eigen::MatrixXd B = BlockDiagonal(b, 3);
  EXPECT_EQ(B.rows(), 6);
  EXPECT_DOUBLE_EQ(B(2, 3), 3.0);
  EXPECT_DOUBLE_EQ(B(0, 2), 0.0);
}

TEST(FractionalDelay, IntegerDelayIsExactDelta) {
  const auto h = FractionalDelayIr(10.0, 768, 48000.0);
  for (int n = 0; n < 768; ++n) {
    if (n == 10) {
      EXPECT_NEAR(h.taps[n], 1.0, 1e-12);
    } else {
      EXPECT_LT(std::abs(h.taps[n]), 1e-3);
    }
  }
  const auto z = FractionalDelayIr(0.0, 64, 8000.0);
  EXPECT_DOUBLE_EQ(z.taps[0], 1.0);
  EXPECT_DOUBLE_EQ(z.taps[1], 0.0);
}

TEST(FractionalDelay, DelayBeyondLengthIsCausalityError) {
  try {
    FractionalDelayIr(64.0, 64, 8000.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCausality);
  }
}

TEST(FractionalDelay, FlatMagnitudeWhenWindowFits) {
  // The half-width window must fit on both sides of the delay; 2.5 + 16
  // keeps the full kernel.
  const auto h = FractionalDelayIr(2.5 + kFractionalDelayHalfWidth, 64, 8000.0);
  for (double w = 0.0; w < 0.9 * std::numbers::pi; w += 0.002) {
    EXPECT_NEAR(std::abs(FreqResponse(h.taps, w)), 1.0, 0.01) << w;
  }
}

TEST(FractionalDelay, CentroidRecoversDelay) {
  const int W = kFractionalDelayHalfWidth;
  for (double d = 0.0; d <= 20.0; d += 0.37) {
    const auto h = FractionalDelayIr(d + W, 2 * W + 24, 8000.0);
    double num = 0.0, den = 0.0;
    for (size_t n = 0; n < h.taps.size(); ++n) {
      num += n * h.taps[n];
      den += h.taps[n];
    }
    EXPECT_NEAR(num / den - W, d, 0.05);
  }
}

TEST(MinPhaseHighpass, PaperScaleTemplateAndRoots) {
  const double fc = 140.0, fs = 48000.0;
  const auto h = MinPhaseHighpass(fc, fs, 768);
  auto mag = [&](double f) {
    return std::abs(FreqResponse(h.taps, 2.0 * std::numbers::pi * f / fs));
  };
  EXPECT_LE(Db(mag(fc / 2.0)), -20.0);
  for (double f = 2.0 * fc; f < fs / 2.0; f *= 1.1) EXPECT_GE(Db(mag(f)), -1.0) << f;
  EXPECT_LE(MaxZeroMagnitude(h.taps), 1.0 + 1e-6);
}

TEST(MinPhaseHighpass, DeskScaleTemplateAndRoots) {
  const double fc = 140.0, fs = 8000.0;
  const auto h = MinPhaseHighpass(fc, fs, 128);
  auto mag = [&](double f) {
    return std::abs(FreqResponse(h.taps, 2.0 * std::numbers::pi * f / fs));
  };
  EXPECT_LE(Db(mag(fc / 2.0)), -20.0);
  for (double f = 2.0 * fc; f < fs / 2.0; f *= 1.1) EXPECT_GE(Db(mag(f)), -1.0);
  EXPECT_LE(MaxZeroMagnitude(h.taps), 1.0 + 1e-6);
}

TEST(MinPhaseHighpass, QuarterRateCutoffPassesNyquist) {
  const auto h = MinPhaseHighpass(2000.0, 8000.0, 128);
  EXPECT_NEAR(Db(std::abs(FreqResponse(h.taps, std::numbers::pi))), 0.0, 1.0);
  EXPECT_LE(MaxZeroMagnitude(h.taps), 1.0 + 1e-6);
}

TEST(MinPhaseHighpass, CascadeMatchesSquaredMagnitude) {
  const double fs = 8000.0;
  const auto h = MinPhaseHighpass(140.0, fs, 128);
  const auto x = GenSignal(SignalKind::kWhite, 1 << 17, 5, fs);
  const auto y = FirFilter(h, FirFilter(h, x));
  const auto px = WelchPsd(x, 512);
  const auto py = WelchPsd(y, 512);
  for (size_t k = 0; k < px.freqs.size(); ++k) {
    const double f = px.freqs[k];
    if (f < 400.0 || f > 3800.0) continue;
    const double h2 = std::norm(FreqResponse(h.taps, 2.0 * std::numbers::pi * f / fs));
    const double predicted = 10.0 * std::log10(px.power[k] * h2 * h2);
    EXPECT_NEAR(10.0 * std::log10(py.power[k]), predicted, 1.0) << f;
  }
}

TEST(MinPhaseHighpass, RejectsBadCutoff) {
  EXPECT_THROW(MinPhaseHighpass(0.0, 8000.0, 64), Error);
  EXPECT_THROW(MinPhaseHighpass(4000.0, 8000.0, 64), Error);
}

TEST(SignalGen, DeterministicAndUnitRms) {
  const auto a = GenSignal(SignalKind::kWhite, 48000, 1, 48000.0);
  const auto b = GenSignal(SignalKind::kWhite, 48000, 1, 48000.0);
  EXPECT_EQ(a.samples, b.samples);
  for (auto kind : {SignalKind::kWhite, SignalKind::kPink, SignalKind::kTone,
                    SignalKind::kSpeechLike}) {
    const auto s = GenSignal(kind, 40000, 9, 8000.0);
    EXPECT_NEAR(MeanSquare(s.samples), 1.0, 1e-9) << SignalKindName(kind);
  }
}

TEST(SignalGen, PinkSlope) {
  for (uint64_t seed : {1u, 2u, 3u}) {
    for (double fs : {8000.0, 48000.0}) {
      const auto s = GenSignal(SignalKind::kPink, 1 << 18, seed, fs);
      const double slope = FitSlopeDbPerOctave(WelchPsd(s, 4096), 50.0, fs / 4.0);
      EXPECT_GE(slope, -4.0);
      EXPECT_LE(slope, -2.0);
    }
  }
}

TEST(SignalGen, ToneSpectrumPeak) {
  const auto s = GenSignal(SignalKind::kTone, 48000, 1, 48000.0, 1000.0);
  const auto p = WelchPsd(s, 4800);
  size_t peak = 0;
  for (size_t k = 0; k < p.power.size(); ++k) {
    if (p.power[k] > p.power[peak]) peak = k;
  }
  EXPECT_NEAR(p.freqs[peak], 1000.0, p.bin_width);
}

TEST(SignalGen, SpeechLikeHasPauses) {
  const double fs = 8000.0;
  const auto s = GenSignal(SignalKind::kSpeechLike, 8 * 8000, 4, fs);
  const int frame = 400;
  double lo = 1e9, hi = 0.0;
  for (int i = 0; i + frame <= s.size(); i += frame) {
    const double p = MeanSquare(s.samples, i, i + frame);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  EXPECT_LT(lo, 1e-3 * hi);
}

TEST(SignalGen, UnknownKind) {
  EXPECT_THROW(ParseSignalKind("brown"), Error);
}

TEST(Welch, ParsevalAndWhiteFlatness) {
  const auto x = GenSignal(SignalKind::kWhite, 1 << 18, 11, 8000.0);
  const auto p = WelchPsd(x, 256);
  EXPECT_NEAR(p.Integrate(), 1.0, 0.05);
  const double mean_level = 1.0 / 4000.0;
  for (size_t k = 2; k + 2 < p.power.size(); ++k) {
    EXPECT_NEAR(10.0 * std::log10(p.power[k] / mean_level), 0.0, 1.0);
  }
}

TEST(Welch, ToneIntegratedPower) {
  const double A = 0.7;
  std::vector<double> x(1 << 16);
  for (size_t n = 0; n < x.size(); ++n) x[n] = A * std::sin(2 * std::numbers::pi * 500.0 * n / 8000.0);
  const auto p = WelchPsd(Signal(x, 8000.0), 1024);
  EXPECT_NEAR(p.Integrate(), A * A / 2.0, 0.05 * A * A / 2.0);
}

TEST(Welch, ZeroSignalAndShortInput) {
  const auto p = WelchPsd(Signal(std::vector<double>(2048, 0.0), 8000.0), 256);
  for (double v : p.power) EXPECT_EQ(v, 0.0);
  try {
    WelchPsd(Signal(std::vector<double>(100, 0.0), 8000.0), 256);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDimension);
  }
}

TEST(Iir, ButterworthCutoffIsHalfPower) {
  const double fs = 8000.0;
  for (double fc : {100.0, 1000.0}) {
    auto sos = ButterworthHighpass(4, fc, fs);
    std::complex<double> h = 1.0;
    const std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * fc / fs);
    for (const auto& b : sos) {
      h *= (b.b0 + b.b1 / z + b.b2 / (z * z)) / (1.0 + b.a1 / z + b.a2 / (z * z));
    }
    EXPECT_NEAR(20 * std::log10(std::abs(h)), -3.0103, 0.05);
  }
}

TEST(Iir, FiltFiltIsZeroPhase) {
  const double fs = 8000.0;
  std::vector<double> x(8000);
  for (size_t n = 0; n < x.size(); ++n) x[n] = std::sin(2 * std::numbers::pi * 1000.0 * n / fs);
  const auto y = ZeroPhaseBand(x, 100.0, 0.0, fs);
  double err = 0.0;
  for (size_t n = 2000; n < 6000; ++n) err = std::max(err, std::abs(y[n] - x[n]));
  EXPECT_LT(err, 1e-3);
}

TEST(Wav, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<double> x(1000);
  for (size_t n = 0; n < x.size(); ++n) x[n] = 0.5 * std::sin(0.01 * n);
  const Signal s(x, 16000.0);
  const std::pair<WavFormat, double> cases[] = {{WavFormat::kPcm16, 1e-4},
                                                {WavFormat::kPcm24, 1e-6},
                                                {WavFormat::kFloat32, 1e-7}};
  for (const auto& [fmt, tol] : cases) {
    const auto path = (dir / "sanc_wav_roundtrip.wav").string();
    WriteWav(path, s, fmt);
    const auto r = ReadWav(path);
    ASSERT_EQ(r.size(), s.size());
    EXPECT_EQ(r.sample_rate, 16000.0);
    for (int n = 0; n < s.size(); ++n) EXPECT_NEAR(r.samples[n], x[n], tol);
  }
}

TEST(MatrixIo, RoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "sanc_mat.bin").string();
  Eigen::MatrixXd m(3, 2);
  m << 1, 2, 3, 4, 5, 6;
  WriteMatrix(path, m);
  EXPECT_EQ(ReadMatrix(path), m);
}

}  // namespace
}  // namespace sanc
