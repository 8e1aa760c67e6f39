/*
 * Copyright 2026 The PPTree Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pptree/projection.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "pptree/error.h"

namespace pptree {
namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kMinDenominator = 1e-12;
constexpr double kRidgeScale = 1e-10;

// Maps each row's group id onto a dense index 0..k-1 (ascending id order).
std::vector<int> DenseGroups(std::span<const int> groups, int* num_groups) {
  std::vector<int> ids = DistinctLabels(groups);
  std::vector<int> dense(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    dense[i] = static_cast<int>(
        std::lower_bound(ids.begin(), ids.end(), groups[i]) - ids.begin());
  }
  *num_groups = static_cast<int>(ids.size());
  return dense;
}

}  // namespace

void IndexConfig::Validate() const {
  if (kind == IndexKind::kLda && lambda != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be 0 for the LDA index");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must lie in [0, 1)");
  }
}

ScatterPair ClassScatter(const Eigen::MatrixXd& x, std::span<const int> groups) {
  if (static_cast<Eigen::Index>(groups.size()) != x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "one group id per row required");
  }
  int num_groups = 0;
  const std::vector<int> dense = DenseGroups(groups, &num_groups);
  if (num_groups < 2 || x.rows() < 2) {
    throw Error(ErrorCode::kDegenerateGrouping,
                "degenerate grouping: at least 2 groups and 2 rows required");
  }
  const Eigen::Index p = x.cols();

  Eigen::MatrixXd group_means = Eigen::MatrixXd::Zero(num_groups, p);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(num_groups);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    group_means.row(dense[i]) += x.row(i);
    counts(dense[i]) += 1.0;
  }
  for (int g = 0; g < num_groups; ++g) group_means.row(g) /= counts(g);
  const Eigen::RowVectorXd mean = x.colwise().mean();

  ScatterPair out;
  out.total_count = x.rows();
  out.between = Eigen::MatrixXd::Zero(p, p);
  for (int g = 0; g < num_groups; ++g) {
    const Eigen::RowVectorXd d = group_means.row(g) - mean;
    out.between.noalias() += counts(g) * d.transpose() * d;
  }
  Eigen::MatrixXd centered(x.rows(), p);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    centered.row(i) = x.row(i) - group_means.row(dense[i]);
  }
  out.within.noalias() = centered.transpose() * centered;
  out.between = 0.5 * (out.between + out.between.transpose()).eval();
  out.within = 0.5 * (out.within + out.within.transpose()).eval();
  return out;
}

ScatterPair ClassScatter(const Dataset& data) {
  return ClassScatter(data.features, data.labels);
}

Eigen::MatrixXd PenalizedWithin(const ScatterPair& scatter,
                                const IndexConfig& config) {
  if (config.kind == IndexKind::kLda || config.lambda == 0.0) {
    return scatter.within;
  }
  Eigen::MatrixXd w = (1.0 - config.lambda) * scatter.within;
  w.diagonal() += config.lambda * scatter.within.diagonal();
  return w;
}

double IndexValue(const Eigen::VectorXd& alpha, const ScatterPair& scatter,
                  const IndexConfig& config) {
  if (alpha.size() != scatter.between.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projection has " + std::to_string(alpha.size()) +
                    " coordinates, scatter has " +
                    std::to_string(scatter.between.rows()));
  }
  const double norm = alpha.norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "projection vector is zero");
  }
  const Eigen::VectorXd a = alpha / norm;
  const Eigen::MatrixXd w = PenalizedWithin(scatter, config);
  const double within = a.dot(w * a);
  const double total = a.dot(scatter.between * a) + within;
  if (total < kMinDenominator) {
    throw Error(ErrorCode::kNoVariation,
                "projection annihilates all variation");
  }
  return std::clamp(1.0 - within / total, 0.0, 1.0);
}

void CanonicalizeSign(Eigen::VectorXd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) > 1e-9 * scale) {
      if (v(j) < 0.0) v = -v;
      return;
    }
  }
}

Projection OptimalProjection(const Eigen::MatrixXd& x,
                             std::span<const int> groups,
                             const IndexConfig& config) {
  config.Validate();
  if (static_cast<Eigen::Index>(groups.size()) != x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "one group id per row required");
  }
  if (x.rows() < 2 || DistinctLabels(groups).size() < 2) {
    throw Error(ErrorCode::kDegenerateGrouping,
                "degenerate grouping: at least 2 groups and 2 rows required");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();

  // Standardize, dropping features without variation.
  const Eigen::RowVectorXd mean = x.colwise().mean();
  std::vector<Eigen::Index> kept;
  std::vector<double> scales;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double ss = (x.col(j).array() - mean(j)).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double magnitude = std::max(1.0, x.col(j).cwiseAbs().maxCoeff());
    if (sd > 1e-12 * magnitude) {
      kept.push_back(j);
      scales.push_back(sd);
    }
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kNoVariation,
                "projection annihilates all variation: no feature varies");
  }
  const auto q = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd z(n, q);
  for (Eigen::Index k = 0; k < q; ++k) {
    z.col(k) = (x.col(kept[k]).array() - mean(kept[k])) / scales[k];
  }

  const ScatterPair scatter = ClassScatter(z, groups);
  const Eigen::MatrixXd total = scatter.between + PenalizedWithin(scatter, config);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> total_eigen(
      total, Eigen::EigenvaluesOnly);
  const double min_eig = total_eigen.eigenvalues().minCoeff();
  const double max_eig = total_eigen.eigenvalues().maxCoeff();
  if (config.kind == IndexKind::kLda &&
      (min_eig <= 0.0 || max_eig / min_eig > kMaxCondition)) {
    throw Error(ErrorCode::kSingularScatter,
                "between+within scatter is singular (condition estimate " +
                    (min_eig > 0.0 ? std::to_string(max_eig / min_eig)
                                   : std::string("inf")) +
                    "); apply PDA regularization (index=pda, lambda>0)");
  }

  const double eps = kRidgeScale * total.trace() / static_cast<double>(q);
  Eigen::MatrixXd ridged = total;
  ridged.diagonal().array() += eps;
  const Eigen::LLT<Eigen::MatrixXd> llt(ridged);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularScatter,
                "between+within scatter is not positive definite; apply PDA "
                "regularization (index=pda, lambda>0)");
  }
  // M = L^-1 B L^-T.
  const auto lower = llt.matrixL();
  Eigen::MatrixXd m = lower.solve(scatter.between);
  m = lower.solve(m.transpose().eval());
  m = 0.5 * (m + m.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(m);
  if (eigen.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularScatter, "eigen decomposition failed");
  }
  const Eigen::VectorXd& theta = eigen.eigenvalues();  // ascending
  const double top = theta(q - 1);
  const double tie_tol = 1e-10 * std::max(1.0, std::abs(top));
  Eigen::Index multiplicity = 1;
  while (multiplicity < q && top - theta(q - 1 - multiplicity) <= tie_tol) {
    ++multiplicity;
  }
  const auto upper = llt.matrixU();
  Eigen::VectorXd v;
  if (multiplicity == 1) {
    v = upper.solve(eigen.eigenvectors().col(q - 1));
  } else {
    const Eigen::MatrixXd candidates =
        upper.solve(eigen.eigenvectors().rightCols(multiplicity));
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(candidates);
    for (Eigen::Index j = 0; j < q; ++j) {
      const Eigen::VectorXd axis = Eigen::VectorXd::Unit(q, j);
      const Eigen::VectorXd fit = candidates * qr.solve(axis);
      if (fit.norm() > 1e-8) {
        v = fit;
        break;
      }
    }
    if (v.size() == 0) v = candidates.col(multiplicity - 1);
  }
  v.normalize();
  CanonicalizeSign(v);

  Projection out;
  out.alpha = Eigen::VectorXd::Zero(p);
  for (Eigen::Index k = 0; k < q; ++k) out.alpha(kept[k]) = v(k) / scales[k];
  out.alpha.normalize();
  CanonicalizeSign(out.alpha);
  out.index_value = IndexValue(v, scatter, config);
  return out;
}

Projection OptimalProjection(const Dataset& data, const IndexConfig& config) {
  return OptimalProjection(data.features, data.labels, config);
}

}  // namespace pptree
