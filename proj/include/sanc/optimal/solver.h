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

#ifndef SANC_OPTIMAL_SOLVER_H_
#define SANC_OPTIMAL_SOLVER_H_

#include <Eigen/Dense>

#include "sanc/constraint/constraint.h"
#include "sanc/constraint/projection.h"
#include "sanc/optimal/stats.h"

namespace sanc {

constexpr double kDefaultEigRatio = 1e4;

struct EigFactor {
  double value = 0.0;
  double lambda_max = 0.0;
  bool zero_matrix = false;
};

// lambda_max(M) / ratio via power iteration (1e-6 relative tolerance).
EigFactor EigRegularization(const Eigen::MatrixXd& m, double ratio);
double PowerIterationLambdaMax(const Eigen::MatrixXd& m, double tol = 1e-6);

enum class RegularizationRule { kFixed, kEigenRatio, kSensorNoise };

struct SolverOptions {
  double beta = 0.0;
  double rho = 0.0;
  // Pseudoinverse (1e-10 relative cutoff) when an inner matrix is singular.
  bool pseudoinverse = false;
};

struct OptimalSolution {
  Eigen::VectorXd w;
  double beta = 0.0;
  double rho = 0.0;
  double residual_norm = 0.0;
  Eigen::VectorXd wiener_term;
  Eigen::VectorXd constraint_term;
  Eigen::VectorXd coupling_term;
  Eigen::VectorXd lambda;  // Lagrange multiplier of the constraint
};

OptimalSolution SolveOptimal(const CorrelationStats& stats,
                             const ImpulseResponse& g_hat,
                             const SpatialConstraint& c,
                             const SolverOptions& options);

// beta, rho from a rule: eigen ratio uses lambda_max of Phi_rr and of
// A^T (Phi_rr + beta I)^{-1} A; sensor noise uses 10 sigma^2 for both.
SolverOptions ChooseRegularization(const CorrelationStats& stats,
                                   const ImpulseResponse& g_hat,
                                   const SpatialConstraint& c,
                                   RegularizationRule rule, double ratio,
                                   double sensor_noise_power);

// Unconstrained regularized Wiener filter -(Phi_rr + beta I)^{-1} phi_rd.
Eigen::VectorXd SolveWiener(const CorrelationStats& stats, double beta);

}  // namespace sanc

#endif  // SANC_OPTIMAL_SOLVER_H_
