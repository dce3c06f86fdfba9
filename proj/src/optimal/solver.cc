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

#include "sanc/optimal/solver.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>

#include "sanc/error.h"

namespace sanc {
namespace {

// Symmetric solve with LDL^T, or an eigenvalue pseudoinverse.
class SymmetricSolver {
 public:
  SymmetricSolver(const Eigen::MatrixXd& m, bool pseudoinverse,
                  const char* what) {
    if (!m.allFinite()) {
      throw Error(ErrorCode::kNumerical, std::string(what) + " not finite");
    }
    ldlt_.compute(m);
    const bool ok = ldlt_.info() == Eigen::Success && ldlt_.rcond() > 1e-13;
    if (ok) return;
    if (!pseudoinverse) {
      throw Error(ErrorCode::kNumerical, std::string(what) + " is singular");
    }
    use_pinv_ = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double tol = kPinvTolerance * ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      inv(i) = std::abs(ev(i)) > tol ? 1.0 / ev(i) : 0.0;
    }
    pinv_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  }

  Eigen::MatrixXd Solve(const Eigen::MatrixXd& b) const {
    if (use_pinv_) return pinv_ * b;
    return ldlt_.solve(b);
  }

 private:
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  bool use_pinv_ = false;
  Eigen::MatrixXd pinv_;
};

}  // namespace

double PowerIterationLambdaMax(const Eigen::MatrixXd& m, double tol) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.01 * std::sin(1.0 + i);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd mv = m * v;
    const double next = v.dot(mv);
    const double nrm = mv.norm();
    if (nrm == 0.0) return 0.0;
    v = mv / nrm;
    if (it > 0 && std::abs(next - lambda) <= tol * 1e-3 * std::abs(next)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

EigFactor EigRegularization(const Eigen::MatrixXd& m, double ratio) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::kConfiguration, "ratio <= 0");
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidDimension, "matrix not square");
  }
  EigFactor f;
  f.lambda_max = PowerIterationLambdaMax(m);
  if (f.lambda_max == 0.0) {
    f.zero_matrix = true;
    std::cerr << "warning: eig_regularization on an all-zero matrix\n";
    return f;
  }
  f.value = f.lambda_max / ratio;
  return f;
}

OptimalSolution SolveOptimal(const CorrelationStats& stats,
                             const ImpulseResponse& g_hat,
                             const SpatialConstraint& c,
                             const SolverOptions& options) {
  const Eigen::Index n = stats.phi_rr.rows();
  if (n != c.H.rows() || stats.phi_rd.size() != n) {
    throw Error(ErrorCode::kInvalidDimension, "stats / constraint mismatch");
  }
  if (!stats.phi_rd.allFinite() || !stats.phi_rr.allFinite()) {
    throw Error(ErrorCode::kNumerical, "NaN in statistics");
  }
  if (options.beta < 0.0 || options.rho < 0.0) {
    throw Error(ErrorCode::kConfiguration, "negative regularization");
  }
  Eigen::MatrixXd phi = stats.phi_rr;
  phi.diagonal().array() += options.beta;
  const SymmetricSolver phi_inv(phi, options.pseudoinverse, "Phi_rr + beta I");

  const Eigen::MatrixXd a = ConstraintOperator(c, g_hat);
  const Eigen::VectorXd a0 = phi_inv.Solve(stats.phi_rd);
  const Eigen::MatrixXd x = phi_inv.Solve(a);
  Eigen::MatrixXd m = a.transpose() * x;
  m = 0.5 * (m + m.transpose()).eval();
  m.diagonal().array() += options.rho;
  const SymmetricSolver m_inv(m, options.pseudoinverse,
                              "A^T Phi^-1 A + rho I");

  const Eigen::VectorXd htd = c.HtDelta();
  OptimalSolution s;
  s.beta = options.beta;
  s.rho = options.rho;
  s.wiener_term = -a0;
  s.constraint_term = x * m_inv.Solve(c.f);
  s.coupling_term = -x * m_inv.Solve(htd - a.transpose() * a0);
  s.w = s.wiener_term + s.constraint_term + s.coupling_term;
  s.lambda = -m_inv.Solve(c.f - htd + a.transpose() * a0);
  if (!s.w.allFinite()) throw Error(ErrorCode::kNumerical, "non-finite w_opt");
  s.residual_norm = (htd + a.transpose() * s.w - c.f).norm();
  return s;
}

Eigen::VectorXd SolveWiener(const CorrelationStats& stats, double beta) {
  Eigen::MatrixXd phi = stats.phi_rr;
  phi.diagonal().array() += beta;
  const SymmetricSolver inv(phi, false, "Phi_rr + beta I");
  return -inv.Solve(stats.phi_rd);
}

SolverOptions ChooseRegularization(const CorrelationStats& stats,
                                   const ImpulseResponse& g_hat,
                                   const SpatialConstraint& c,
                                   RegularizationRule rule, double ratio,
                                   double sensor_noise_power) {
  SolverOptions o;
  switch (rule) {
    case RegularizationRule::kFixed:
      break;
    case RegularizationRule::kSensorNoise:
      o.beta = o.rho = 10.0 * sensor_noise_power;
      o.pseudoinverse = sensor_noise_power == 0.0;
      break;
    case RegularizationRule::kEigenRatio: {
      o.beta = EigRegularization(stats.phi_rr, ratio).value;
      Eigen::MatrixXd phi = stats.phi_rr;
      phi.diagonal().array() += o.beta;
      const SymmetricSolver inv(phi, true, "Phi_rr + beta I");
      const Eigen::MatrixXd a = ConstraintOperator(c, g_hat);
      Eigen::MatrixXd m = a.transpose() * inv.Solve(a);
      m = 0.5 * (m + m.transpose()).eval();
      o.rho = EigRegularization(m, ratio).value;
      o.pseudoinverse = o.beta == 0.0;
      break;
    }
  }
  return o;
}

}  // namespace sanc
