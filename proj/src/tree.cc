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

#include "pptree/tree.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pptree/entropy.h"
#include "pptree/error.h"

namespace pptree {
namespace {

int MajorityLabel(std::span<const int> counts) {
  // Ties go to the smallest class id.
  int best = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
  }
  return best + 1;
}

Eigen::MatrixXd GatherRows(const Eigen::MatrixXd& x, std::span<const int> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  }
  return out;
}

std::vector<double> ToStd(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

void CheckCommon(const Dataset& data, const FitConfig& config) {
  ValidateDataset(data);
  config.Validate();
  if (data.rows() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "at least 2 rows are required");
  }
  if (data.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "at least 1 feature is required");
  }
}

FittedTree EmptyTree(const Dataset& data, Variant variant,
                     const FitConfig& config) {
  FittedTree tree;
  tree.n_features = static_cast<int>(data.cols());
  tree.classes = DistinctLabels(data.labels);
  tree.class_names = data.class_names;
  tree.variant = variant;
  tree.config = config;
  return tree;
}

// Builds trees with one leaf per class (original algorithm and the
// class-subsetting modification).
class ClassPartitionBuilder {
 public:
  ClassPartitionBuilder(const Dataset& data, const FitConfig& config,
                        bool closest_pair_only, FittedTree& tree)
      : data_(data),
        config_(config),
        closest_pair_only_(closest_pair_only),
        tree_(tree) {}

  int Build(const std::vector<int>& rows, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const std::vector<int> labels = RowLabels(rows);
    const std::vector<int> counts = ClassCounts(labels, data_.num_classes());
    {
      TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.n = static_cast<int>(rows.size());
      node.depth = depth;
      node.entropy = Entropy(counts);
    }
    const std::vector<int> classes = DistinctLabels(labels);
    if (classes.size() == 1) {
      MakeLeaf(index, classes.front(), LeafReason::kPure);
      return index;
    }

    try {
      SplitNode(index, rows, labels, classes, depth);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument) throw;
      tree_.warnings.push_back("node " + std::to_string(index) +
                               " made a majority leaf: " + e.what());
      MakeLeaf(index, MajorityLabel(counts), LeafReason::kDegenerate);
    }
    return index;
  }

 private:
  std::vector<int> RowLabels(const std::vector<int>& rows) const {
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (int r : rows) labels.push_back(data_.labels[static_cast<std::size_t>(r)]);
    return labels;
  }

  void MakeLeaf(int index, int label, LeafReason reason) {
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.is_leaf = true;
    node.label = label;
    node.reason = reason;
  }

  void SplitNode(int index, const std::vector<int>& rows,
                 const std::vector<int>& labels, const std::vector<int>& classes,
                 int depth) {
    const auto class_slot = [&](int label) {
      return static_cast<std::size_t>(
          std::lower_bound(classes.begin(), classes.end(), label) -
          classes.begin());
    };

    // Step 1: projection separating all classes at the node.
    const Projection first =
        OptimalProjection(GatherRows(data_.features, rows), labels, config_.index);
    const std::vector<double> first_alpha = ToStd(first.alpha);
    std::vector<double> means(classes.size(), 0.0);
    std::vector<int> sizes(classes.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t k = class_slot(labels[i]);
      means[k] += Project(first_alpha, data_.features, rows[i]);
      ++sizes[k];
    }
    for (std::size_t k = 0; k < classes.size(); ++k) means[k] /= sizes[k];

    // Step 2: super-classes.
    const SuperGroups groups = RelabelSupergroups(means);

    // Step 3: projection and split value for the two super-classes, or for
    // the closest class pair across them.
    std::vector<int> step3_rows;
    std::vector<int> step3_groups;
    if (closest_pair_only_) {
      const auto [a, b] = ClosestPair(means, groups);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t k = class_slot(labels[i]);
        if (k == a || k == b) {
          step3_rows.push_back(rows[i]);
          step3_groups.push_back(groups.upper[k] ? 1 : 0);
        }
      }
    } else {
      step3_rows = rows;
      for (int label : labels) {
        step3_groups.push_back(groups.upper[class_slot(label)] ? 1 : 0);
      }
    }
    const Projection second = OptimalProjection(
        GatherRows(data_.features, step3_rows), step3_groups, config_.index);
    const std::vector<double> alpha = ToStd(second.alpha);

    std::vector<double> projected[2];
    for (std::size_t i = 0; i < step3_rows.size(); ++i) {
      projected[step3_groups[i]].push_back(
          Project(alpha, data_.features, step3_rows[i]));
    }
    const GroupStats stats[2] = {SummarizeGroup(projected[0]),
                                 SummarizeGroup(projected[1])};
    // The side with the smaller projected mean goes left; on a tie, the side
    // holding the smallest class id.
    int lower_side = 0;
    if (stats[1].mean < stats[0].mean) {
      lower_side = 1;
    } else if (stats[1].mean == stats[0].mean) {
      lower_side = groups.upper[0] ? 1 : 0;
    }
    const SplitPoint split =
        SplitValue(config_.rule, stats[lower_side], stats[1 - lower_side]);
    if (split.fell_back) {
      tree_.warnings.push_back("node " + std::to_string(index) + ": rule " +
                               std::to_string(config_.rule.id()) +
                               " fell back to rule " +
                               std::to_string(split.rule_used));
    }

    std::vector<int> left_rows;
    std::vector<int> right_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int side = groups.upper[class_slot(labels[i])] ? 1 : 0;
      (side == lower_side ? left_rows : right_rows).push_back(rows[i]);
    }

    {
      TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.is_leaf = false;
      node.alpha = alpha;
      node.c = split.c;
      node.kind = SplitKind::kRule;
      node.rule = split.rule_used;
    }
    const int left = Build(left_rows, depth + 1);
    const int right = Build(right_rows, depth + 1);
    tree_.nodes[static_cast<std::size_t>(index)].left = left;
    tree_.nodes[static_cast<std::size_t>(index)].right = right;
  }

  // Classes (one per super-class) with the smallest projected mean gap.
  // Ties go to the lexicographically smallest (lower, upper) slot pair.
  static std::pair<std::size_t, std::size_t> ClosestPair(
      const std::vector<double>& means, const SuperGroups& groups) {
    std::pair<std::size_t, std::size_t> best{0, 0};
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < means.size(); ++a) {
      if (groups.upper[a]) continue;
      for (std::size_t b = 0; b < means.size(); ++b) {
        if (!groups.upper[b]) continue;
        const double gap = std::abs(means[a] - means[b]);
        if (gap < best_gap) {
          best_gap = gap;
          best = {a, b};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  const FitConfig& config_;
  const bool closest_pair_only_;
  FittedTree& tree_;
};

// Builds entropy-split trees on node projections or coordinate axes.
class EntropyBuilder {
 public:
  EntropyBuilder(const Dataset& data, const FitConfig& config, bool axis_only,
                 FittedTree& tree)
      : data_(data), config_(config), axis_only_(axis_only), tree_(tree) {}

  int Build(const std::vector<int>& rows, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (int r : rows) labels.push_back(data_.labels[static_cast<std::size_t>(r)]);
    const std::vector<int> counts = ClassCounts(labels, data_.num_classes());
    const double entropy = Entropy(counts);
    {
      TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.n = static_cast<int>(rows.size());
      node.depth = depth;
      node.entropy = entropy;
    }

    const int majority = MajorityLabel(counts);
    const auto present = std::count_if(counts.begin(), counts.end(),
                                       [](int c) { return c > 0; });
    if (present == 1) return Leaf(index, majority, LeafReason::kPure);
    if (static_cast<int>(rows.size()) < config_.min_node_size) {
      return Leaf(index, majority, LeafReason::kMinNodeSize);
    }
    if (depth >= config_.max_depth) {
      return Leaf(index, majority, LeafReason::kMaxDepth);
    }

    std::vector<int> dense(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) dense[i] = labels[i] - 1;

    std::optional<Candidate> candidate;
    bool fallback = false;
    if (!axis_only_) {
      try {
        candidate = ProjectionCandidate(rows, labels, dense);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInvalidArgument) throw;
        tree_.warnings.push_back("node " + std::to_string(index) +
                                 " used an axis split: " + e.what());
        fallback = true;
      }
    }
    if (!candidate) candidate = AxisCandidate(rows, dense);
    if (!candidate) {
      tree_.warnings.push_back("node " + std::to_string(index) +
                               " has no candidate splits");
      return Leaf(index, majority, LeafReason::kDegenerate);
    }
    if (entropy - candidate->split.combined < config_.entropy_threshold) {
      return Leaf(index, majority, LeafReason::kLowEntropyReduction);
    }

    std::vector<int> left_rows;
    std::vector<int> right_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (candidate->z[i] < candidate->split.c ? left_rows : right_rows)
          .push_back(rows[i]);
    }
    {
      TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.is_leaf = false;
      node.alpha = candidate->alpha;
      node.c = candidate->split.c;
      node.kind = SplitKind::kEntropy;
      node.axis_fallback = fallback;
      node.child_entropy = candidate->split.combined;
    }
    const int left = Build(left_rows, depth + 1);
    const int right = Build(right_rows, depth + 1);
    tree_.nodes[static_cast<std::size_t>(index)].left = left;
    tree_.nodes[static_cast<std::size_t>(index)].right = right;
    return index;
  }

 private:
  struct Candidate {
    std::vector<double> alpha;
    std::vector<double> z;
    EntropySplit split;
  };

  int Leaf(int index, int label, LeafReason reason) {
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.is_leaf = true;
    node.label = label;
    node.reason = reason;
    return index;
  }

  Candidate ProjectionCandidate(const std::vector<int>& rows,
                                const std::vector<int>& labels,
                                const std::vector<int>& dense) const {
    const Projection projection = OptimalProjection(
        GatherRows(data_.features, rows), labels, config_.index);
    Candidate out;
    out.alpha = ToStd(projection.alpha);
    out.z.reserve(rows.size());
    for (int r : rows) out.z.push_back(Project(out.alpha, data_.features, r));
    out.split = BestEntropySplit(out.z, dense, data_.num_classes());
    return out;
  }

  // Best single-feature split; ties go to the lowest feature index.
  std::optional<Candidate> AxisCandidate(const std::vector<int>& rows,
                                         const std::vector<int>& dense) const {
    std::optional<Candidate> best;
    for (Eigen::Index j = 0; j < data_.cols(); ++j) {
      Candidate candidate;
      candidate.alpha.assign(static_cast<std::size_t>(data_.cols()), 0.0);
      candidate.alpha[static_cast<std::size_t>(j)] = 1.0;
      candidate.z.reserve(rows.size());
      for (int r : rows) {
        candidate.z.push_back(Project(candidate.alpha, data_.features, r));
      }
      try {
        candidate.split = BestEntropySplit(candidate.z, dense, data_.num_classes());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoCandidateSplits) throw;
        continue;
      }
      if (!best || candidate.split.combined < best->split.combined) {
        best = std::move(candidate);
      }
    }
    return best;
  }

  const Dataset& data_;
  const FitConfig& config_;
  const bool axis_only_;
  FittedTree& tree_;
};

std::vector<int> AllRows(const Dataset& data) {
  std::vector<int> rows(static_cast<std::size_t>(data.rows()));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
  return rows;
}

FittedTree FitClassPartition(const Dataset& data, const FitConfig& config,
                             Variant variant) {
  CheckCommon(data, config);
  FittedTree tree = EmptyTree(data, variant, config);
  const auto num_classes = static_cast<Eigen::Index>(tree.classes.size());
  if (num_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "at least 2 classes are required, found " +
                    std::to_string(num_classes));
  }
  if (data.rows() < 2 * num_classes) {
    throw Error(ErrorCode::kInvalidArgument,
                "at least 2 rows per class are required (n >= 2G)");
  }
  ClassPartitionBuilder builder(data, config, variant == Variant::kMod1, tree);
  builder.Build(AllRows(data), 0);
  return tree;
}

FittedTree FitEntropy(const Dataset& data, const FitConfig& config,
                      Variant variant) {
  CheckCommon(data, config);
  FittedTree tree = EmptyTree(data, variant, config);
  EntropyBuilder builder(data, config, variant == Variant::kAxisBaseline, tree);
  builder.Build(AllRows(data), 0);
  return tree;
}

}  // namespace

std::string_view VariantName(Variant variant) {
  switch (variant) {
    case Variant::kOriginal:
      return "original";
    case Variant::kMod1:
      return "mod1";
    case Variant::kMod2:
      return "mod2";
    case Variant::kAxisBaseline:
      return "axis";
  }
  return "unknown";
}

Variant ParseVariant(std::string_view name) {
  if (name == "original") return Variant::kOriginal;
  if (name == "mod1") return Variant::kMod1;
  if (name == "mod2") return Variant::kMod2;
  if (name == "axis" || name == "baseline") return Variant::kAxisBaseline;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown variant '" + std::string(name) +
                  "' (expected original, mod1, mod2 or axis)");
}

std::string_view LeafReasonName(LeafReason reason) {
  switch (reason) {
    case LeafReason::kPure:
      return "pure";
    case LeafReason::kMinNodeSize:
      return "min_node_size";
    case LeafReason::kLowEntropyReduction:
      return "entropy_threshold";
    case LeafReason::kMaxDepth:
      return "max_depth";
    case LeafReason::kDegenerate:
      return "degenerate";
  }
  return "unknown";
}

LeafReason ParseLeafReason(std::string_view name) {
  for (LeafReason reason :
       {LeafReason::kPure, LeafReason::kMinNodeSize,
        LeafReason::kLowEntropyReduction, LeafReason::kMaxDepth,
        LeafReason::kDegenerate}) {
    if (LeafReasonName(reason) == name) return reason;
  }
  throw Error(ErrorCode::kParse, "unknown leaf reason '" + std::string(name) + "'");
}

void FitConfig::Validate() const {
  index.Validate();
  if (min_node_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_node_size must be >= 1");
  }
  if (!(entropy_threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "entropy_threshold must be >= 0");
  }
  if (max_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  }
}

int FittedTree::num_internal() const {
  return static_cast<int>(std::count_if(
      nodes.begin(), nodes.end(), [](const TreeNode& n) { return !n.is_leaf; }));
}

int FittedTree::num_leaves() const {
  return static_cast<int>(nodes.size()) - num_internal();
}

int FittedTree::depth() const {
  int out = 0;
  for (const TreeNode& node : nodes) out = std::max(out, node.depth);
  return out;
}

SuperGroups RelabelSupergroups(std::span<const double> projected_means) {
  if (projected_means.size() < 2) {
    throw Error(ErrorCode::kNoSeparation,
                "no separation on projection: fewer than 2 classes");
  }
  const auto [lo, hi] =
      std::minmax_element(projected_means.begin(), projected_means.end());
  if (!(*lo < *hi)) {
    throw Error(ErrorCode::kNoSeparation,
                "no separation on projection: all projected class means equal");
  }
  SuperGroups out;
  out.midpoint = (*lo + *hi) / 2.0;
  out.upper.reserve(projected_means.size());
  for (double m : projected_means) out.upper.push_back(!(m < out.midpoint));
  return out;
}

FittedTree FitOriginal(const Dataset& data, const FitConfig& config) {
  return FitClassPartition(data, config, Variant::kOriginal);
}

FittedTree FitMod1(const Dataset& data, const FitConfig& config) {
  return FitClassPartition(data, config, Variant::kMod1);
}

FittedTree FitMod2(const Dataset& data, const FitConfig& config) {
  return FitEntropy(data, config, Variant::kMod2);
}

FittedTree FitAxisBaseline(const Dataset& data, const FitConfig& config) {
  return FitEntropy(data, config, Variant::kAxisBaseline);
}

FittedTree Fit(const Dataset& data, Variant variant, const FitConfig& config) {
  switch (variant) {
    case Variant::kOriginal:
      return FitOriginal(data, config);
    case Variant::kMod1:
      return FitMod1(data, config);
    case Variant::kMod2:
      return FitMod2(data, config);
    case Variant::kAxisBaseline:
      return FitAxisBaseline(data, config);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown variant");
}

double Project(std::span<const double> alpha, std::span<const double> x) {
  double z = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) z += alpha[j] * x[j];
  return z;
}

double Project(std::span<const double> alpha, const Eigen::MatrixXd& x,
               Eigen::Index row) {
  double z = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    z += alpha[j] * x(row, static_cast<Eigen::Index>(j));
  }
  return z;
}

int Predict(const FittedTree& tree, std::span<const double> x) {
  if (static_cast<int>(x.size()) != tree.n_features) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(tree.n_features) +
                    " features, got " + std::to_string(x.size()));
  }
  const TreeNode* node = &tree.nodes.front();
  while (!node->is_leaf) {
    const int next = Project(node->alpha, x) < node->c ? node->left : node->right;
    node = &tree.nodes[static_cast<std::size_t>(next)];
  }
  return node->label;
}

std::vector<int> PredictAll(const FittedTree& tree, const Eigen::MatrixXd& x) {
  if (x.cols() != tree.n_features) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(tree.n_features) +
                    " features, got " + std::to_string(x.cols()));
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      row[static_cast<std::size_t>(j)] = x(i, j);
    }
    out.push_back(Predict(tree, row));
  }
  return out;
}

}  // namespace pptree
