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

#ifndef PPTREE_TREE_H_
#define PPTREE_TREE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pptree/dataset.h"
#include "pptree/projection.h"
#include "pptree/split_rules.h"

namespace pptree {

enum class Variant {
  // One projection per class partition, G - 1 splits.
  kOriginal,
  // As kOriginal, but the split projection and value use only the two
  // closest classes across the super-class boundary.
  kMod1,
  // Entropy-minimizing split on each node's projection, multiple leaves per
  // class, recursion governed by the stopping thresholds.
  kMod2,
  // kMod2 restricted to coordinate axes.
  kAxisBaseline,
};

std::string_view VariantName(Variant variant);
// Accepts "original", "mod1", "mod2", "axis" (also "baseline"). Throws
// kInvalidArgument otherwise.
Variant ParseVariant(std::string_view name);

struct FitConfig {
  IndexConfig index;
  // Used by kOriginal and kMod1.
  SplitRule rule{1};
  // n_s: nodes with fewer rows become leaves (kMod2, kAxisBaseline).
  int min_node_size = 10;
  // ent_s: splits reducing entropy by less than this become leaves.
  double entropy_threshold = 0.01;
  int max_depth = 30;
  // Fitting is deterministic; the seed is carried for provenance only.
  std::uint64_t seed = 0;

  void Validate() const;
};

enum class LeafReason {
  kPure,
  kMinNodeSize,
  kLowEntropyReduction,
  kMaxDepth,
  kDegenerate,
};

std::string_view LeafReasonName(LeafReason reason);
LeafReason ParseLeafReason(std::string_view name);

enum class SplitKind { kRule, kEntropy };

// Flat node record; children are indices into FittedTree::nodes. A point x
// goes left iff alpha' x < c.
struct TreeNode {
  bool is_leaf = true;

  // Leaf.
  int label = 0;
  LeafReason reason = LeafReason::kPure;

  // Internal.
  std::vector<double> alpha;
  double c = 0.0;
  SplitKind kind = SplitKind::kRule;
  // Split rule applied (after fallback) when kind == kRule.
  int rule = 0;
  // The node projection failed and a coordinate axis was used instead.
  bool axis_fallback = false;
  int left = -1;
  int right = -1;

  // Training diagnostics.
  int n = 0;
  int depth = 0;
  double entropy = 0.0;
  // Weighted child entropy of the accepted split (entropy splits only).
  double child_entropy = 0.0;
};

struct FittedTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int n_features = 0;
  // Class ids present in the training data, ascending.
  std::vector<int> classes;
  // Display names of class ids 1..G.
  std::vector<std::string> class_names;
  Variant variant = Variant::kOriginal;
  FitConfig config;
  std::vector<std::string> warnings;

  const TreeNode& root() const { return nodes.front(); }
  int num_internal() const;
  int num_leaves() const;
  int depth() const;
};

// Step 2 relabeling: the two classes with the largest projected mean gap
// define a midpoint mp; classes with mean < mp join the lower super-class.
struct SuperGroups {
  double midpoint = 0.0;
  // upper[k] tells whether class k (index into the means) joins the upper
  // super-class.
  std::vector<bool> upper;
};

// Throws kNoSeparation when all means are equal (or fewer than two).
SuperGroups RelabelSupergroups(std::span<const double> projected_means);

FittedTree FitOriginal(const Dataset& data, const FitConfig& config);
FittedTree FitMod1(const Dataset& data, const FitConfig& config);
FittedTree FitMod2(const Dataset& data, const FitConfig& config);
FittedTree FitAxisBaseline(const Dataset& data, const FitConfig& config);
FittedTree Fit(const Dataset& data, Variant variant, const FitConfig& config);

// alpha' x summed in coordinate order. Fitting and prediction share it so
// training rows route exactly as they were split.
double Project(std::span<const double> alpha, std::span<const double> x);
double Project(std::span<const double> alpha, const Eigen::MatrixXd& x,
               Eigen::Index row);

// Throws kDimensionMismatch when x has the wrong length.
int Predict(const FittedTree& tree, std::span<const double> x);
std::vector<int> PredictAll(const FittedTree& tree, const Eigen::MatrixXd& x);

}  // namespace pptree

#endif  // PPTREE_TREE_H_
