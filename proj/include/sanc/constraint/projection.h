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

#ifndef SANC_CONSTRAINT_PROJECTION_H_
#define SANC_CONSTRAINT_PROJECTION_H_

#include <Eigen/Dense>
#include <string>

#include "sanc/constraint/constraint.h"
#include "sanc/dsp/signal.h"

namespace sanc {

enum class InverseMode { kRegularized, kPseudoinverse };

constexpr double kPinvTolerance = 1e-10;

// P = I - A (A^T A + gamma I)^+ A^T and q = A (A^T A + gamma I)^+ b, kept in
// the factored form P v = v - U diag(shrink) U^T v where A = U S V^T.
struct ProjectionPair {
  Eigen::MatrixXd basis;    // KL x r
  Eigen::VectorXd shrink;   // r
  Eigen::VectorXd q;        // KL
  double gamma = 0.0;
  InverseMode mode = InverseMode::kRegularized;

  int dim() const { return static_cast<int>(q.size()); }
  Eigen::VectorXd Apply(const Eigen::VectorXd& v) const;
  // out = P v + q, written in place.
  void ApplyAffine(Eigen::VectorXd& v) const;
  Eigen::MatrixXd DenseP() const;
};

// A = G^T H with G = blockdiag(Toeplitz(g_hat)).
Eigen::MatrixXd ConstraintOperator(const SpatialConstraint& c,
                                   const ImpulseResponse& g_hat);

// gamma <= 0 in kRegularized mode requires A to have full column rank.
ProjectionPair BuildProjection(const SpatialConstraint& c,
                               const ImpulseResponse& g_hat, double gamma,
                               InverseMode mode);
ProjectionPair BuildProjectionFromOperator(const Eigen::MatrixXd& A,
                                           const Eigen::VectorXd& b,
                                           double gamma, InverseMode mode);

// gamma = lambda_max(A^T A) / ratio.
double EigRelativeGamma(const SpatialConstraint& c, const ImpulseResponse& g_hat,
                        double ratio);

// ||H^T (delta + G w) - f||.
double ConstraintResidual(const Eigen::VectorXd& w, const ImpulseResponse& g_hat,
                          const SpatialConstraint& c);
double ConstraintResidual(const Eigen::VectorXd& w, const Eigen::MatrixXd& A,
                          const SpatialConstraint& c);

// Debug dumps of H, P and q (binary matrix format).
void DumpProjection(const std::string& dir, const SpatialConstraint& c,
                    const ProjectionPair& p);

}  // namespace sanc

#endif  // SANC_CONSTRAINT_PROJECTION_H_
