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
#include <limits>
#include <random>

#include "sanc/constraint/constraint.h"
#include "sanc/constraint/projection.h"
#include "sanc/error.h"
#include "sanc/harness/pipeline.h"
#include "sanc/optimal/solver.h"
#include "sanc/optimal/stats.h"
#include "test_util.h"

namespace sanc {
namespace {

Eigen::MatrixXd LowerToeplitz(const std::vector<double>& g, int L) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i - j < static_cast<int>(g.size())) t(i, j) = g[i - j];
    }
  }
  return t;
}

// r(n) = G^T x(n) with x(n) the stacked channel histories; dense products
// accumulated in blocks of samples.
void OracleStats(const std::vector<std::vector<double>>& ch,
                 const std::vector<double>& d, const std::vector<double>& g,
                 int L, Eigen::MatrixXd* phi, Eigen::VectorXd* phid) {
  const int K = static_cast<int>(ch.size());
  const int N = static_cast<int>(d.size());
  const Eigen::MatrixXd gt = LowerToeplitz(g, L).transpose();
  *phi = Eigen::MatrixXd::Zero(K * L, K * L);
  *phid = Eigen::VectorXd::Zero(K * L);
  const int block = 2048;
  for (int n0 = 0; n0 < N; n0 += block) {
    const int nb = std::min(block, N - n0);
    Eigen::MatrixXd X(K * L, nb);
    for (int c = 0; c < nb; ++c) {
      const int n = n0 + c;
      for (int a = 0; a < K; ++a) {
        for (int i = 0; i < L; ++i) X(a * L + i, c) = n - i >= 0 ? ch[a][n - i] : 0.0;
      }
    }
    Eigen::MatrixXd R(K * L, nb);
    for (int a = 0; a < K; ++a) R.middleRows(a * L, L) = gt * X.middleRows(a * L, L);
    *phi += R * R.transpose();
    *phid += R * Eigen::Map<const Eigen::VectorXd>(d.data() + n0, nb);
  }
  *phi /= N;
  *phid /= N;
}

struct Tiny {
  std::vector<std::vector<double>> ch;
  std::vector<double> d;
  ImpulseResponse g;
  SpatialConstraint c;
};

Tiny MakeTiny(std::mt19937_64& rng) {
  constexpr int L = 4, N = 64;
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> delay(0, 2);
  Tiny t;
  std::vector<double> r0(L, 0.0), r1(L, 0.0), g(L, 0.0);
  r0[delay(rng)] = 1.0;
  const int d1 = delay(rng);
  r1[d1] = 1.0;
  r1[d1 + 1] = 0.4 * nd(rng);
  const int dg = delay(rng);
  g[dg] = 1.0;
  g[dg + 1] = 0.5 * nd(rng);
  t.g = ImpulseResponse(g, 8000.0);
  t.c = BuildConstraint({ImpulseResponse(r0, 8000.0), ImpulseResponse(r1, 8000.0)},
                        1, 0, L);
  t.ch.assign(2, std::vector<double>(N));
  t.d.resize(N);
  for (int n = 0; n < N; ++n) {
    t.ch[0][n] = nd(rng);
    t.d[n] = nd(rng);
  }
  t.ch[1] = t.d;
  return t;
}

TEST(Stats, MatchesDenseOracleOnDeskScene) {
  const auto scene = Render(testing::DeskScene(), 8 * 8000);
  const auto ch = StackedChannels(scene);
  const auto st = AccumulateStats(ch, scene.d, scene.g, scene.L);
  Eigen::MatrixXd phi;
  Eigen::VectorXd phid;
  OracleStats(ch, scene.d, scene.g.taps, scene.L, &phi, &phid);
  EXPECT_LT((st.phi_rr - phi).norm(), 1e-10 * phi.norm());
  EXPECT_LT((st.phi_rd - phid).norm(), 1e-10 * phid.norm());
  EXPECT_EQ(st.sample_count, 8 * 8000);
  EXPECT_LT((st.phi_rr - st.phi_rr.transpose()).norm(), 1e-8 * phi.norm());
}

TEST(Stats, DirectAccumulationAgrees) {
  const auto scene = Render(testing::DeskScene(true, 32), 4000);
  const auto ch = StackedChannels(scene);
  const auto a = AccumulateStats(ch, scene.d, scene.g, 32, 500);
  const auto b = AccumulateStatsDirect(ch, scene.d, scene.g, 32, 500);
  EXPECT_LT((a.phi_rr - b.phi_rr).norm(), 1e-10 * b.phi_rr.norm());
  EXPECT_LT((a.phi_rd - b.phi_rd).norm(), 1e-10 * b.phi_rd.norm());
}

TEST(Stats, ZeroStream) {
  std::vector<std::vector<double>> ch(2, std::vector<double>(100, 0.0));
  const auto st = AccumulateStats(ch, ch[1], ImpulseResponse({1.0}, 8000.0), 8);
  EXPECT_EQ(st.phi_rr.norm(), 0.0);
  EXPECT_EQ(st.phi_rd.norm(), 0.0);
}

TEST(Stats, WhiteNoiseIsNearlyDiagonal) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 2.0);
  std::vector<std::vector<double>> ch(1, std::vector<double>(200000));
  for (double& v : ch[0]) v = nd(rng);
  const auto st = AccumulateStats(ch, ch[0], ImpulseResponse({1.0}, 8000.0), 8);
  const Eigen::MatrixXd ref = 4.0 * Eigen::MatrixXd::Identity(8, 8);
  EXPECT_LT((st.phi_rr - ref).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Stats, ShortStreamRejected) {
  std::vector<std::vector<double>> ch(1, std::vector<double>(8, 1.0));
  try {
    AccumulateStats(ch, ch[0], ImpulseResponse({1.0}, 8000.0), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(EigRegularization, Examples) {
  EXPECT_NEAR(EigRegularization(Eigen::MatrixXd::Identity(5, 5), 1e4).value, 1e-4, 1e-10);
  Eigen::MatrixXd m = Eigen::Vector2d(4.0, 1.0).asDiagonal();
  EXPECT_NEAR(EigRegularization(m, 2.0).value, 2.0, 1e-6);
  const auto z = EigRegularization(Eigen::MatrixXd::Zero(3, 3), 1e4);
  EXPECT_TRUE(z.zero_matrix);
  EXPECT_EQ(z.value, 0.0);
}

TEST(EigRegularization, DeskScenePhiRr) {
  const auto scene = Render(testing::DeskScene(), 2 * 8000);
  const auto st = AccumulateStats(StackedChannels(scene), scene.d, scene.g, scene.L);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.phi_rr);
  const double lmax = es.eigenvalues().maxCoeff();
  EXPECT_NEAR(EigRegularization(st.phi_rr, 1e4).value, lmax / 1e4, 1e-6 * lmax / 1e4);
}

TEST(SolveOptimal, MatchesSaddlePointOracle) {
  std::mt19937_64 rng(11);
  int solved = 0;
  for (int attempt = 0; attempt < 200 && solved < 20; ++attempt) {
    const Tiny t = MakeTiny(rng);
    Eigen::MatrixXd phi;
    Eigen::VectorXd phid;
    OracleStats(t.ch, t.d, t.g.taps, 4, &phi, &phid);
    Eigen::MatrixXd gbig = Eigen::MatrixXd::Zero(8, 8);
    gbig.topLeftCorner(4, 4) = gbig.bottomRightCorner(4, 4) = LowerToeplitz(t.g.taps, 4);
    const Eigen::MatrixXd A = gbig.transpose() * t.c.H;
    const int m = static_cast<int>(A.cols());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(8 + m, 8 + m);
    kkt.topLeftCorner(8, 8) = phi;
    kkt.topRightCorner(8, m) = A;
    kkt.bottomLeftCorner(m, 8) = A.transpose();
    Eigen::VectorXd rhs(8 + m);
    rhs.head(8) = -phid;
    rhs.tail(m) = t.c.f - t.c.H.transpose() * Eigen::VectorXd::Unit(8, 4);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (lu.rank() < 8 + m) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);

    const auto st = AccumulateStats(t.ch, t.d, t.g, 4);
    SolverOptions opt;
    opt.pseudoinverse = true;
    const auto s = SolveOptimal(st, t.g, t.c, opt);
    EXPECT_LT((s.w - sol.head(8)).norm(), 1e-6 * sol.head(8).norm()) << attempt;
    EXPECT_LT((s.lambda - sol.tail(m)).norm(), 1e-6 * std::max(1.0, sol.tail(m).norm()));
    EXPECT_LT(s.residual_norm, 1e-8);
    ++solved;
  }
  EXPECT_EQ(solved, 20);
}

class DeskSolve : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    scene_ = new RenderedScene(Render(testing::DeskScene(true, 32), 3 * 8000));
    setup_ = new ProposedSetup(BuildProposedSetup(*scene_, ConstraintOptions{}));
    stats_ = new CorrelationStats(
        AccumulateStats(StackedChannels(*scene_), scene_->d, scene_->g, 32));
  }
  static void TearDownTestSuite() {
    delete scene_;
    delete setup_;
    delete stats_;
  }
  static RenderedScene* scene_;
  static ProposedSetup* setup_;
  static CorrelationStats* stats_;
};
RenderedScene* DeskSolve::scene_ = nullptr;
ProposedSetup* DeskSolve::setup_ = nullptr;
CorrelationStats* DeskSolve::stats_ = nullptr;

TEST_F(DeskSolve, InactiveConstraintGivesWiener) {
  SpatialConstraint c = setup_->constraint;
  const double beta = 1e-3;
  const Eigen::VectorXd ww = SolveWiener(*stats_, beta);
  c.f = c.HtDelta() + ConstraintOperator(c, scene_->g).transpose() * ww;
  SolverOptions opt;
  opt.beta = beta;
  opt.pseudoinverse = true;
  const auto s = SolveOptimal(*stats_, scene_->g, c, opt);
  EXPECT_LT((s.constraint_term + s.coupling_term).norm(), 1e-8 * ww.norm());
  EXPECT_LT((s.w - ww).norm(), 1e-8 * ww.norm());
  EXPECT_LT((s.wiener_term - ww).norm(), 1e-12 * ww.norm());
}

TEST_F(DeskSolve, LargeRhoRecoversWiener) {
  SolverOptions opt;
  opt.beta = 1e-3;
  opt.rho = 1e14;
  const auto s = SolveOptimal(*stats_, scene_->g, setup_->constraint, opt);
  const Eigen::VectorXd ww = SolveWiener(*stats_, opt.beta);
  EXPECT_LT((s.w - ww).norm(), 1e-6 * ww.norm());
}

struct Solved {
  RenderedScene scene;
  ProposedSetup setup;
  CorrelationStats stats;
};

Solved SolveDesk(int secondary_delay, double ssnr_db) {
  AcousticScene a = testing::DeskScene(true, 32);
  a.secondary_delay = secondary_delay;
  RenderedScene r = Render(a, 3 * 8000);
  if (std::isfinite(ssnr_db)) r = AddSensorNoise(r, ssnr_db, {0, 1, 2, 3, 4}, 4, 7);
  auto setup = BuildProposedSetup(r, ConstraintOptions{});
  auto stats = AccumulateStats(StackedChannels(r), r.d, r.g, 32);
  return {std::move(r), std::move(setup), std::move(stats)};
}

// Two sources seen by six mics leave Phi_rr rank deficient; a little sensor
// noise makes the stationarity condition well posed.
TEST(SolveOptimalDesk, Stationarity) {
  const Solved d = SolveDesk(2, 30.0);
  SolverOptions opt;
  opt.pseudoinverse = true;
  const auto s = SolveOptimal(d.stats, d.scene.g, d.setup.constraint, opt);
  const Eigen::MatrixXd A = ConstraintOperator(d.setup.constraint, d.scene.g);
  const Eigen::VectorXd grad = d.stats.phi_rr * s.w + d.stats.phi_rd + A * s.lambda;
  EXPECT_LT(grad.norm(), 1e-6 * d.stats.phi_rd.norm());
}

TEST(SolveOptimalDesk, EigRuleResidualSmall) {
  const Solved d = SolveDesk(0, std::numeric_limits<double>::infinity());
  const auto opt = ChooseRegularization(d.stats, d.scene.g, d.setup.constraint,
                                        RegularizationRule::kEigenRatio, 1e4, 0.0);
  const auto s = SolveOptimal(d.stats, d.scene.g, d.setup.constraint, opt);
  EXPECT_GT(opt.beta, 0.0);
  EXPECT_GT(opt.rho, 0.0);
  EXPECT_LT(s.residual_norm, 1e-3 * d.setup.constraint.f.norm());
  EXPECT_NEAR(s.residual_norm,
              ConstraintResidual(s.w, d.scene.g, d.setup.constraint), 1e-12);
}

// With a secondary delay the first lags of the weighted target are out of
// reach; the residual is measured above that floor.
TEST(SolveOptimalDesk, EigRuleResidualAboveCausalFloor) {
  const Solved d = SolveDesk(2, std::numeric_limits<double>::infinity());
  const auto& c = d.setup.constraint;
  const Eigen::MatrixXd A = ConstraintOperator(c, d.scene.g);
  const Eigen::VectorXd b = c.f - c.HtDelta();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A.transpose());
  cod.setThreshold(1e-10);
  const double floor = (A.transpose() * cod.solve(b) - b).norm();
  EXPECT_GT(floor, 0.0);
  const auto opt = ChooseRegularization(d.stats, d.scene.g, c,
                                        RegularizationRule::kEigenRatio, 1e4, 0.0);
  const auto s = SolveOptimal(d.stats, d.scene.g, c, opt);
  EXPECT_LT(std::sqrt(s.residual_norm * s.residual_norm - floor * floor),
            1e-3 * c.f.norm());
}

TEST_F(DeskSolve, BetaShrinksSolution) {
  double prev = 1e300;
  for (double beta : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    SolverOptions opt;
    opt.beta = beta;
    opt.rho = 1e-6;
    const double n = SolveOptimal(*stats_, scene_->g, setup_->constraint, opt).w.norm();
    EXPECT_LE(n, prev * (1.0 + 1e-9)) << beta;
    prev = n;
  }
}

TEST_F(DeskSolve, ResidualNeverAssumedZero) {
  SolverOptions opt;
  opt.beta = 1e-3;
  opt.rho = 10.0;
  const auto s = SolveOptimal(*stats_, scene_->g, setup_->constraint, opt);
  EXPECT_GT(s.residual_norm, 0.0);
  EXPECT_NEAR(s.residual_norm,
              ConstraintResidual(s.w, scene_->g, setup_->constraint), 1e-12);
}

TEST_F(DeskSolve, SingularWithoutPseudoinverseThrows) {
  CorrelationStats z = *stats_;
  z.phi_rr.setZero();
  try {
    SolveOptimal(z, scene_->g, setup_->constraint, SolverOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumerical);
  }
  CorrelationStats bad = *stats_;
  bad.phi_rd(0) = std::nan("");
  EXPECT_THROW(SolveOptimal(bad, scene_->g, setup_->constraint, SolverOptions{}), Error);
}

TEST(SolveOptimal, ResidualScalesWithInput) {
  AcousticScene a = testing::DeskScene(true, 32);
  a.desired.level_db = 0.0;
  const auto s1 = Render(a, 2 * 8000);
  RenderedScene s2 = s1;
  const double c = 3.0;
  for (auto* comp : {&s2.desired, &s2.noise}) {
    for (auto& ch : *comp) for (double& v : ch) v *= c;
  }
  for (double& v : s2.d) v *= c;
  auto cfg = DefaultPipelineConfig(8000.0);
  const auto r1 = RunSystem(ControllerKind::kProposedOptimal, s1, cfg);
  const auto r2 = RunSystem(ControllerKind::kProposedOptimal, s2, cfg);
  double num = 0.0, den = 0.0;
  for (size_t n = 0; n < r1.e.size(); ++n) {
    num += std::pow(r2.e[n] - c * r1.e[n], 2);
    den += r2.e[n] * r2.e[n];
  }
  EXPECT_LT(std::sqrt(num / den), 1e-6);
}

}  // namespace
}  // namespace sanc
