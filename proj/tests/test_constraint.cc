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
#include <numbers>
#include <random>

#include "sanc/constraint/constraint.h"
#include "sanc/constraint/projection.h"
#include "sanc/dsp/filters.h"
#include "sanc/dsp/toeplitz.h"
#include "sanc/error.h"
#include "sanc/scene/geometry.h"
#include "sanc/scene/scene.h"

namespace sanc {
namespace {

struct Desk {
  std::vector<ImpulseResponse> reirs;
  ImpulseResponse g;
  int error_mic;
  int ref_mic;
  int L = 128;
};

Desk MakeDesk(int L = 128) {
  Desk d;
  d.L = L;
  const auto geo = BuildGeometry(GeometryPreset::kGlasses6);
  d.error_mic = geo.error_mic_index;
  d.ref_mic = DefaultReferenceMic(geo, 0.0);
  d.reirs = SynthReirs(geo, 0.0, d.ref_mic, 8000.0, L, 8.0);
  std::vector<double> g(L, 0.0);
  g[2] = 1.0;
  d.g = ImpulseResponse(g, 8000.0);
  return d;
}

SpatialConstraint DeskConstraint(const Desk& d) {
  return BuildConstraint(d.reirs, d.error_mic, d.ref_mic, d.L,
                         FullConstraintSpan(d.reirs, d.L));
}

// Dense G^T H from explicit Toeplitz matrices.
Eigen::MatrixXd DenseA(const SpatialConstraint& c, const ImpulseResponse& g) {
  const Eigen::MatrixXd G = BlockDiagonal(MakeToeplitz(g, c.L), c.K());
  return G.transpose() * c.H;
}

double RelFro(const Eigen::MatrixXd& a, const Eigen::MatrixXd& ref) {
  return a.norm() / ref.norm();
}

TEST(Constraint, SingleDeltaChannelIsIdentity) {
  std::vector<double> delta(8, 0.0);
  delta[0] = 1.0;
  const auto c = BuildConstraint({ImpulseResponse(delta, 8000.0)}, 0, 0, 8);
  EXPECT_TRUE(c.H.isApprox(Eigen::MatrixXd::Identity(8, 8)));
  EXPECT_EQ(c.f, Eigen::VectorXd::Unit(8, 0));
}

TEST(Constraint, ReferenceBlockIsShiftedIdentity) {
  const Desk d = MakeDesk(32);
  const auto c = BuildConstraint(d.reirs, d.error_mic, d.ref_mic, 32);
  int ch = 0;
  while (c.channel_mics[ch] != d.ref_mic) ++ch;
  const Eigen::MatrixXd B = c.Block(ch);
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) EXPECT_EQ(B(i, j), j == i + 8 ? 1.0 : 0.0);
  }
}

TEST(Constraint, HtDeltaMatchesDenseMultiply) {
  const Desk d = MakeDesk(64);
  const auto c = BuildConstraint(d.reirs, d.error_mic, d.ref_mic, 64);
  // Independent construction of the error-mic block from the Toeplitz matrix.
  const Eigen::MatrixXd T = MakeToeplitz(d.reirs[d.error_mic], 64);
  Eigen::MatrixXd H(c.K() * 64, 64);
  for (int j = 0; j < c.K(); ++j) {
    H.middleRows(j * 64, 64) = MakeToeplitz(d.reirs[c.channel_mics[j]], 64).transpose();
  }
  EXPECT_LT((H - c.H).norm(), 1e-14);
  const Eigen::VectorXd htd = H.transpose() * c.DeltaTilde();
  EXPECT_LT((htd - c.HtDelta()).norm(), 1e-14);
  EXPECT_LT((htd - T.col(0)).norm(), 1e-14);
}

TEST(Constraint, MissingReirRejected) {
  Desk d = MakeDesk(32);
  d.reirs[2] = ImpulseResponse();
  EXPECT_THROW(BuildConstraint(d.reirs, d.error_mic, d.ref_mic, 32), Error);
}

TEST(Weighting, DeltaAndScaledDelta) {
  const Desk d = MakeDesk(64);
  const auto c = DeskConstraint(d);
  std::vector<double> one = {1.0};
  std::vector<double> half = {0.5};
  EXPECT_LT((ApplySpectralWeighting(c, ImpulseResponse(one, 8000.0)).f - c.f).norm(), 1e-15);
  EXPECT_LT((ApplySpectralWeighting(c, ImpulseResponse(half, 8000.0)).f - 0.5 * c.f).norm(), 1e-15);
}

TEST(Weighting, HighpassAttenuatesLowBand) {
  const Desk d = MakeDesk();
  const auto c = DeskConstraint(d);
  const auto w = ApplySpectralWeighting(c, MinPhaseHighpass(140.0, 8000.0, 128));
  EXPECT_TRUE(w.weighted);
  const double omega = 2.0 * std::numbers::pi * 70.0 / 8000.0;
  std::vector<double> f0(c.f.data(), c.f.data() + c.f.size());
  std::vector<double> f1(w.f.data(), w.f.data() + w.f.size());
  const double drop = 20.0 * std::log10(std::abs(FreqResponse(f1, omega)) /
                                        std::abs(FreqResponse(f0, omega)));
  EXPECT_LE(drop, -20.0);
  EXPECT_GT((w.f - w.HtDelta()).norm(), 1e-3);
}

TEST(Weighting, NonMinimumPhaseRejected) {
  const Desk d = MakeDesk(32);
  const auto c = DeskConstraint(d);
  std::vector<double> s = {1.0, -2.0};
  try {
    ApplySpectralWeighting(c, ImpulseResponse(s, 8000.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMinimumPhase);
  }
}

TEST(Projection, FullyDeterminedSingleChannel) {
  std::vector<double> delta(6, 0.0);
  delta[0] = 1.0;
  auto c = BuildConstraint({ImpulseResponse(delta, 8000.0)}, 0, 0, 6);
  c.f << 0.3, -1.0, 2.0, 0.5, 0.0, 0.25;
  const auto p = BuildProjection(c, ImpulseResponse(delta, 8000.0), 0.0,
                                 InverseMode::kPseudoinverse);
  EXPECT_LT(p.DenseP().norm(), 1e-12);
  EXPECT_LT((p.q - (c.f - c.DeltaTilde())).norm(), 1e-12);
}

TEST(Projection, ScaleInvariantInPseudoinverseMode) {
  const Desk d = MakeDesk(32);
  auto c = DeskConstraint(d);
  const auto p1 = BuildProjection(c, d.g, 0.0, InverseMode::kPseudoinverse);
  c.H *= 3.7;
  const auto p2 = BuildProjection(c, d.g, 0.0, InverseMode::kPseudoinverse);
  EXPECT_LT((p1.DenseP() - p2.DenseP()).norm(), 1e-9);
}

TEST(Projection, IdempotentSymmetricAndAnnihilating) {
  const Desk d = MakeDesk();
  const auto c = DeskConstraint(d);
  const Eigen::MatrixXd A = DenseA(c, d.g);
  EXPECT_LT((A - ConstraintOperator(c, d.g)).norm(), 1e-12 * A.norm());

  const auto pinv = BuildProjection(c, d.g, 0.0, InverseMode::kPseudoinverse);
  const Eigen::MatrixXd P = pinv.DenseP();
  EXPECT_LT(RelFro(P * P - P, P), 1e-8);
  EXPECT_LT((P - P.transpose()).norm(), 1e-12);
  EXPECT_LT(RelFro(P * A, A), 1e-8);

}

TEST(Projection, RegularizedMatchesDirectFormula) {
  const Desk d = MakeDesk(32);
  const auto c = DeskConstraint(d);
  const Eigen::MatrixXd A = DenseA(c, d.g);
  for (double gamma : {1e-2, 1e-4}) {
    const Eigen::MatrixXd R =
        BuildProjection(c, d.g, gamma, InverseMode::kRegularized).DenseP();
    const Eigen::MatrixXd M =
        A.transpose() * A + gamma * Eigen::MatrixXd::Identity(A.cols(), A.cols());
    const Eigen::MatrixXd ref = Eigen::MatrixXd::Identity(A.rows(), A.rows()) -
                                A * M.ldlt().solve(A.transpose());
    EXPECT_LT((R - ref).norm(), 1e-8 * ref.norm()) << gamma;
  }
}

TEST(Projection, QIsRangeProjectionOfTarget) {
  const Desk d = MakeDesk(48);
  const auto c = ApplySpectralWeighting(DeskConstraint(d),
                                        MinPhaseHighpass(140.0, 8000.0, 48));
  const Eigen::MatrixXd A = DenseA(c, d.g);
  const auto p = BuildProjection(c, d.g, 0.0, InverseMode::kPseudoinverse);
  const Eigen::VectorXd b = c.f - c.HtDelta();
  // Orthogonal projection of b onto range(A^T) via a complete orthogonal
  // decomposition.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A.transpose());
  cod.setThreshold(1e-10);
  const Eigen::VectorXd proj = A.transpose() * cod.solve(b);
  EXPECT_LT((A.transpose() * p.q - proj).norm(), 1e-8 * std::max(1.0, b.norm()));
}

TEST(Projection, UpdatesStayOnConstraintSet) {
  const Desk d = MakeDesk(64);
  const auto c = ApplySpectralWeighting(DeskConstraint(d),
                                        MinPhaseHighpass(140.0, 8000.0, 64));
  const auto p = BuildProjection(c, d.g, 0.0, InverseMode::kPseudoinverse);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd w(p.dim()), u(p.dim());
    for (int i = 0; i < p.dim(); ++i) {
      w[i] = dist(rng);
      u[i] = 10.0 * dist(rng);
    }
    Eigen::VectorXd a = w;
    p.ApplyAffine(a);
    Eigen::VectorXd b = w + u;
    p.ApplyAffine(b);
    EXPECT_NEAR(ConstraintResidual(a, d.g, c), ConstraintResidual(b, d.g, c), 1e-10);
  }
}

TEST(Projection, QSatisfiesConstraintWhenGInvertible) {
  const Desk d = MakeDesk(32);
  const auto c = DeskConstraint(d);
  std::vector<double> g0(32, 0.0);
  g0[0] = 1.0;
  const ImpulseResponse g(g0, 8000.0);
  const auto p = BuildProjection(c, g, 0.0, InverseMode::kPseudoinverse);
  EXPECT_LT(ConstraintResidual(p.q, g, c), 1e-10);
  EXPECT_NEAR(ConstraintResidual(Eigen::VectorXd::Zero(p.dim()), g, c),
              (c.HtDelta() - c.f).norm(), 1e-14);
}

TEST(Projection, SingularWithoutRegularizationIsNumericalError) {
  const Desk d = MakeDesk(32);
  const auto c = DeskConstraint(d);
  try {
    BuildProjection(c, d.g, 0.0, InverseMode::kRegularized);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumerical);
  }
}

TEST(Projection, EigRelativeGamma) {
  const Desk d = MakeDesk(32);
  const auto c = DeskConstraint(d);
  const Eigen::MatrixXd A = DenseA(c, d.g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A);
  EXPECT_NEAR(EigRelativeGamma(c, d.g, 1e4), es.eigenvalues().maxCoeff() / 1e4,
              1e-6 * es.eigenvalues().maxCoeff() / 1e4);
}

}  // namespace
}  // namespace sanc
