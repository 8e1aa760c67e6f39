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

#include "pptree/boundary.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "pptree/csv.h"
#include "pptree/error.h"
#include "pptree/projection.h"

namespace pptree {
namespace {

const std::string& ClassName(const FittedTree& tree, int label) {
  return tree.class_names[static_cast<std::size_t>(label - 1)];
}

}  // namespace

BoundingBox DataBoundingBox(const Eigen::MatrixXd& x, double margin) {
  if (x.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "no data for bounding box");
  BoundingBox box;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double lo = x.col(j).minCoeff();
    const double hi = x.col(j).maxCoeff();
    double pad = margin * (hi - lo);
    if (!(pad > 0.0)) pad = 0.5;
    box.emplace_back(lo - pad, hi + pad);
  }
  return box;
}

Eigen::Vector2d BoundaryGrid::Point(int i, int j) const {
  const double step1 = (bbox[0].second - bbox[0].first) / (resolution - 1);
  const double step2 = (bbox[1].second - bbox[1].first) / (resolution - 1);
  return {bbox[0].first + i * step1, bbox[1].first + j * step2};
}

Eigen::Vector2d BoundaryGrid::PointAt(std::size_t index) const {
  const auto res = static_cast<std::size_t>(resolution);
  return Point(static_cast<int>(index % res), static_cast<int>(index / res));
}

BoundaryGrid ComputeBoundaryGrid(const FittedTree& tree, const BoundingBox& bbox,
                                 int resolution) {
  if (tree.n_features != 2 || bbox.size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "lattice grids need a 2-feature model and a 2D box; use "
                "sampled boundaries for other dimensions");
  }
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 2");
  }
  for (const auto& [lo, hi] : bbox) {
    if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "empty bounding box");
  }
  BoundaryGrid grid;
  grid.bbox = bbox;
  grid.resolution = resolution;
  const auto res = static_cast<std::size_t>(resolution);
  grid.labels.resize(res * res);
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      const Eigen::Vector2d p = grid.Point(i, j);
      const double x[2] = {p(0), p(1)};
      grid.labels[static_cast<std::size_t>(j) * res + static_cast<std::size_t>(i)] =
          Predict(tree, x);
    }
  }
  grid.border_mask.assign(res * res, false);
  for (std::size_t j = 0; j < res; ++j) {
    for (std::size_t i = 0; i < res; ++i) {
      const int label = grid.labels[j * res + i];
      const bool border = (i > 0 && grid.labels[j * res + i - 1] != label) ||
                          (i + 1 < res && grid.labels[j * res + i + 1] != label) ||
                          (j > 0 && grid.labels[(j - 1) * res + i] != label) ||
                          (j + 1 < res && grid.labels[(j + 1) * res + i] != label);
      grid.border_mask[j * res + i] = border;
    }
  }
  return grid;
}

BoundaryGrid ComputeBoundaryGrid(const FittedTree& tree, const Dataset& data,
                                 int resolution) {
  if (data.cols() != tree.n_features) {
    throw Error(ErrorCode::kDimensionMismatch, "data and model dimensions differ");
  }
  return ComputeBoundaryGrid(tree, DataBoundingBox(data.features), resolution);
}

std::vector<Eigen::Vector2d> BorderPoints(const BoundaryGrid& grid) {
  std::vector<Eigen::Vector2d> out;
  for (std::size_t k = 0; k < grid.border_mask.size(); ++k) {
    if (grid.border_mask[k]) out.push_back(grid.PointAt(k));
  }
  return out;
}

SampledBoundary SampleBoundary(const FittedTree& tree, const BoundingBox& bbox,
                               int samples, std::uint64_t seed, int neighbors) {
  if (static_cast<int>(bbox.size()) != tree.n_features) {
    throw Error(ErrorCode::kDimensionMismatch, "box and model dimensions differ");
  }
  if (samples < 2 || neighbors < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need >= 2 samples and >= 1 neighbour");
  }
  const auto p = static_cast<Eigen::Index>(bbox.size());
  std::mt19937_64 rng(seed);
  SampledBoundary out;
  out.points.resize(samples, p);
  std::vector<double> x(static_cast<std::size_t>(p));
  for (int i = 0; i < samples; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      std::uniform_real_distribution<double> unif(bbox[static_cast<std::size_t>(j)].first,
                                                  bbox[static_cast<std::size_t>(j)].second);
      x[static_cast<std::size_t>(j)] = out.points(i, j) = unif(rng);
    }
    out.labels.push_back(Predict(tree, x));
  }

  // Distances are measured on box-normalized coordinates.
  Eigen::MatrixXd scaled = out.points;
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& [lo, hi] = bbox[static_cast<std::size_t>(j)];
    scaled.col(j) = (scaled.col(j).array() - lo) / (hi - lo);
  }
  const int k = std::min(neighbors, samples - 1);
  out.border.assign(static_cast<std::size_t>(samples), false);
  std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    for (int m = 0; m < samples; ++m) {
      dist[static_cast<std::size_t>(m)] = {(scaled.row(i) - scaled.row(m)).squaredNorm(), m};
    }
    dist[static_cast<std::size_t>(i)].first = std::numeric_limits<double>::infinity();
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    for (int m = 0; m < k; ++m) {
      if (out.labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(m)].second)] !=
          out.labels[static_cast<std::size_t>(i)]) {
        out.border[static_cast<std::size_t>(i)] = true;
        break;
      }
    }
  }
  return out;
}

PcaResult PcaReduce(const Eigen::MatrixXd& x, int k) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (k < 1 || k > std::min<Eigen::Index>(n - 1, p)) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " exceeds min(n - 1, p) = " +
                    std::to_string(std::min<Eigen::Index>(n - 1, p)));
  }
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(cov);
  const double total = std::max(eigen.eigenvalues().sum(), 0.0);

  PcaResult out;
  out.components.resize(p, k);
  out.variance_explained.resize(k);
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd v = eigen.eigenvectors().col(p - 1 - c);
    CanonicalizeSign(v);
    out.components.col(c) = v;
    const double value = std::max(eigen.eigenvalues()(p - 1 - c), 0.0);
    out.variance_explained(c) = total > 0.0 ? value / total : 0.0;
  }
  out.scores = centered * out.components;
  return out;
}

void WriteGridCsv(const BoundaryGrid& grid, const FittedTree& tree, std::ostream& out) {
  out << "x1,x2,label,is_border\n";
  for (std::size_t k = 0; k < grid.labels.size(); ++k) {
    const Eigen::Vector2d p = grid.PointAt(k);
    out << FormatDouble(p(0)) << ',' << FormatDouble(p(1)) << ','
        << ClassName(tree, grid.labels[k]) << ',' << (grid.border_mask[k] ? 1 : 0) << '\n';
  }
}

void WriteSampledCsv(const SampledBoundary& sample, const FittedTree& tree,
                     std::ostream& out) {
  for (Eigen::Index j = 0; j < sample.points.cols(); ++j) out << 'x' << j + 1 << ',';
  out << "label,is_border\n";
  for (Eigen::Index i = 0; i < sample.points.rows(); ++i) {
    for (Eigen::Index j = 0; j < sample.points.cols(); ++j) {
      out << FormatDouble(sample.points(i, j)) << ',';
    }
    out << ClassName(tree, sample.labels[static_cast<std::size_t>(i)]) << ','
        << (sample.border[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
  }
}

}  // namespace pptree
