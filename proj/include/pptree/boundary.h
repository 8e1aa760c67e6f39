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

#ifndef PPTREE_BOUNDARY_H_
#define PPTREE_BOUNDARY_H_

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pptree/dataset.h"
#include "pptree/tree.h"

namespace pptree {

// Per-dimension (min, max).
using BoundingBox = std::vector<std::pair<double, double>>;

// Data range expanded by `margin` of the range on each side.
BoundingBox DataBoundingBox(const Eigen::MatrixXd& x, double margin = 0.1);

// Predicted labels on a resolution x resolution lattice over a 2D box.
// Cell (i, j) sits at x1 = lo1 + i * step1, x2 = lo2 + j * step2 and is
// stored at j * resolution + i (x1 varies fastest).
struct BoundaryGrid {
  BoundingBox bbox;
  int resolution = 0;
  std::vector<int> labels;
  // True where a 4-neighbour carries a different label.
  std::vector<bool> border_mask;

  Eigen::Vector2d Point(int i, int j) const;
  Eigen::Vector2d PointAt(std::size_t index) const;
};

inline constexpr int kDefaultResolution = 201;

// Throws kDimensionMismatch unless tree and box are 2D, kInvalidArgument for
// resolution < 2.
BoundaryGrid ComputeBoundaryGrid(const FittedTree& tree, const BoundingBox& bbox,
                                 int resolution = kDefaultResolution);
BoundaryGrid ComputeBoundaryGrid(const FittedTree& tree, const Dataset& data,
                                 int resolution = kDefaultResolution);

// Coordinates of the border cells, in lattice order.
std::vector<Eigen::Vector2d> BorderPoints(const BoundaryGrid& grid);

// Random-sample boundary for any dimension: uniform points in the box,
// predicted, and flagged as border when any of their `neighbors` nearest
// sampled points (Euclidean) is labelled differently.
struct SampledBoundary {
  Eigen::MatrixXd points;
  std::vector<int> labels;
  std::vector<bool> border;
};

SampledBoundary SampleBoundary(const FittedTree& tree, const BoundingBox& bbox,
                               int samples, std::uint64_t seed, int neighbors = 8);

struct PcaResult {
  Eigen::MatrixXd components;  // p x k, orthonormal columns
  Eigen::MatrixXd scores;      // n x k
  Eigen::VectorXd variance_explained;
};

// Leading eigenvectors of the sample covariance, each with its first nonzero
// coordinate positive. Throws kInvalidArgument when k > min(n - 1, p).
PcaResult PcaReduce(const Eigen::MatrixXd& x, int k);

// CSV `x1,x2,label,is_border` (label as class name).
void WriteGridCsv(const BoundaryGrid& grid, const FittedTree& tree, std::ostream& out);
// CSV `x1..xp,label,is_border`.
void WriteSampledCsv(const SampledBoundary& sample, const FittedTree& tree,
                     std::ostream& out);

}  // namespace pptree

#endif  // PPTREE_BOUNDARY_H_
