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

#include "sanc/constraint/projection.h"

#include <Eigen/SVD>
#include <filesystem>

#include "sanc/dsp/matrix_io.h"
#include "sanc/dsp/toeplitz.h"
#include "sanc/error.h"

namespace sanc {

Eigen::VectorXd ProjectionPair::Apply(const Eigen::VectorXd& v) const {
  const Eigen::VectorXd t = shrink.cwiseProduct(basis.transpose() * v);
  return v - basis * t;
}

void ProjectionPair::ApplyAffine(Eigen::VectorXd& v) const {
  Eigen::VectorXd t = basis.transpose() * v;
  t.array() *= shrink.array();
  v.noalias() -= basis * t;
  v += q;
}

Eigen::MatrixXd ProjectionPair::DenseP() const {
  Eigen::MatrixXd p = -basis * shrink.asDiagonal() * basis.transpose();
  p.diagonal().array() += 1.0;
  return p;
}

Eigen::MatrixXd ConstraintOperator(const SpatialConstraint& c,
                                   const ImpulseResponse& g_hat) {
  const Eigen::MatrixXd gt = MakeToeplitz(g_hat, c.L).transpose();
  Eigen::MatrixXd a(c.H.rows(), c.H.cols());
  for (int j = 0; j < c.K(); ++j) {
    a.middleRows(static_cast<Eigen::Index>(j) * c.L, c.L).noalias() =
        gt * c.H.middleRows(static_cast<Eigen::Index>(j) * c.L, c.L);
  }
  return a;
}

ProjectionPair BuildProjectionFromOperator(const Eigen::MatrixXd& A,
                                           const Eigen::VectorXd& b,
                                           double gamma, InverseMode mode) {
  if (gamma < 0.0) throw Error(ErrorCode::kConfiguration, "gamma < 0");
  if (A.cols() != b.size()) {
    throw Error(ErrorCode::kInvalidDimension, "operator / target size");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (!(smax > 0.0)) {
    throw Error(ErrorCode::kNumerical, "constraint operator is zero");
  }
  const double tol = kPinvTolerance * smax;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;
  if (mode == InverseMode::kRegularized && gamma == 0.0 && rank < sv.size()) {
    throw Error(ErrorCode::kNumerical,
                "A^T A is singular; use gamma > 0 or pseudoinverse mode");
  }
  const int r = mode == InverseMode::kPseudoinverse ? rank
                                                    : static_cast<int>(sv.size());
  ProjectionPair p;
  p.gamma = gamma;
  p.mode = mode;
  p.basis = svd.matrixU().leftCols(r);
  p.shrink.resize(r);
  Eigen::VectorXd coef(r);
  const Eigen::VectorXd vb = svd.matrixV().leftCols(r).transpose() * b;
  for (int i = 0; i < r; ++i) {
    const double s = sv(i);
    const double g = mode == InverseMode::kPseudoinverse ? 0.0 : gamma;
    p.shrink(i) = s * s / (s * s + g);
    coef(i) = s / (s * s + g) * vb(i);
  }
  p.q = p.basis * coef;
  return p;
}

ProjectionPair BuildProjection(const SpatialConstraint& c,
                               const ImpulseResponse& g_hat, double gamma,
                               InverseMode mode) {
  const Eigen::MatrixXd a = ConstraintOperator(c, g_hat);
  return BuildProjectionFromOperator(a, c.f - c.HtDelta(), gamma, mode);
}

double EigRelativeGamma(const SpatialConstraint& c, const ImpulseResponse& g_hat,
                        double ratio) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::kConfiguration, "ratio <= 0");
  const Eigen::MatrixXd a = ConstraintOperator(c, g_hat);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const double s = svd.singularValues()(0);
  return s * s / ratio;
}

double ConstraintResidual(const Eigen::VectorXd& w, const Eigen::MatrixXd& A,
                          const SpatialConstraint& c) {
  if (w.size() != A.rows()) {
    throw Error(ErrorCode::kInvalidDimension, "filter length mismatch");
  }
  return (c.HtDelta() + A.transpose() * w - c.f).norm();
}

double ConstraintResidual(const Eigen::VectorXd& w, const ImpulseResponse& g_hat,
                          const SpatialConstraint& c) {
  return ConstraintResidual(w, ConstraintOperator(c, g_hat), c);
}

void DumpProjection(const std::string& dir, const SpatialConstraint& c,
                    const ProjectionPair& p) {
  std::filesystem::create_directories(dir);
  WriteMatrix(dir + "/H.bin", c.H);
  WriteMatrix(dir + "/P.bin", p.DenseP());
  WriteMatrix(dir + "/q.bin", p.q);
}

}  // namespace sanc
