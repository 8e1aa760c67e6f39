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

#ifndef PPTREE_PROJECTION_H_
#define PPTREE_PROJECTION_H_

#include <span>

#include <Eigen/Dense>

#include "pptree/dataset.h"

namespace pptree {

enum class IndexKind { kLda, kPda };

// Projection pursuit index selection. `lambda` is the PDA penalty in [0, 1)
// and must be 0 for LDA.
struct IndexConfig {
  IndexKind kind = IndexKind::kLda;
  double lambda = 0.0;

  static IndexConfig Lda() { return {}; }
  static IndexConfig Pda(double lambda = 0.1) { return {IndexKind::kPda, lambda}; }

  void Validate() const;
};

// Between-group (B) and within-group (W) sums of squares.
struct ScatterPair {
  Eigen::MatrixXd between;
  Eigen::MatrixXd within;
  Eigen::Index total_count = 0;
};

struct Projection {
  // Unit length, first nonzero coordinate positive.
  Eigen::VectorXd alpha;
  double index_value = 0.0;
};

// B = sum_g n_g (m_g - m)(m_g - m)^T, W = sum_g sum_{i in g} (x_i - m_g)(..)^T.
// `groups` may hold arbitrary integer ids. Throws kDegenerateGrouping when
// fewer than two groups are present.
ScatterPair ClassScatter(const Eigen::MatrixXd& x, std::span<const int> groups);
ScatterPair ClassScatter(const Dataset& data);

// W with the PDA penalty applied: (1 - lambda) W + lambda diag(W). Identity
// for LDA.
Eigen::MatrixXd PenalizedWithin(const ScatterPair& scatter,
                                const IndexConfig& config);

// I(a) = 1 - a' W_l a / a' (B + W_l) a, in [0, 1]. `alpha` need not be unit;
// it is normalized first. Throws kNoVariation when the normalized
// denominator is below 1e-12.
double IndexValue(const Eigen::VectorXd& alpha, const ScatterPair& scatter,
                  const IndexConfig& config);

// Finds the direction maximizing the index.
//
// Features are standardized internally (centered, unit sample variance) and
// features that do not vary are excluded, getting a zero coefficient. The
// optimum solves B v = theta (B + W_l) v: Cholesky of (B + W_l + eps I) with
// eps = 1e-10 trace / q reduces it to a symmetric eigenproblem. The direction
// is mapped back to the raw feature scale, normalized and given the canonical
// sign. When the leading eigenvalue is repeated, the candidate closest to the
// lowest-index coordinate axis is taken.
//
// index_value is the index of the returned direction on the standardized
// data; for LDA this equals IndexValue(alpha, ClassScatter(x, groups), ...).
//
// Throws kDegenerateGrouping (< 2 groups or n < 2), kNoVariation (no feature
// varies) and, for LDA only, kSingularScatter when B + W has condition
// estimate above 1e12.
Projection OptimalProjection(const Eigen::MatrixXd& x,
                             std::span<const int> groups,
                             const IndexConfig& config);
Projection OptimalProjection(const Dataset& data, const IndexConfig& config);

// Flips `v` so that its first coordinate with magnitude above
// 1e-9 * max|v| is positive.
void CanonicalizeSign(Eigen::VectorXd& v);

}  // namespace pptree

#endif  // PPTREE_PROJECTION_H_
