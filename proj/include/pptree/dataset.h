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

#ifndef PPTREE_DATASET_H_
#define PPTREE_DATASET_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pptree {

// n x p feature matrix with class ids in {1..G}. class_names[g - 1] is the
// display name of class g; feature_names has one entry per column.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Throws kInvalidArgument when shapes disagree or a label is outside 1..G.
void ValidateDataset(const Dataset& data);

// Builds a dataset with default names ("1".."G", "x1".."xp").
Dataset MakeDataset(Eigen::MatrixXd features, std::vector<int> labels);

// Rows of `data` selected by `rows`, in that order. Class naming is kept.
Dataset SubsetRows(const Dataset& data, std::span<const int> rows);

// Sorted distinct labels.
std::vector<int> DistinctLabels(std::span<const int> labels);

// Per-class counts indexed by class id - 1.
std::vector<int> ClassCounts(std::span<const int> labels, int num_classes);

}  // namespace pptree

#endif  // PPTREE_DATASET_H_
