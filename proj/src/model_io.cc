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

#include "pptree/model_io.h"

#include <algorithm>
#include <string>
#include <vector>

#include "pptree/error.h"

namespace pptree {
namespace {

using nlohmann::json;

constexpr std::string_view kFormatName = "pptree-model";

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kParse, "malformed model document: " + what);
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object()) Malformed("expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) Malformed(std::string("missing '") + key + "'");
  return *it;
}

int IntField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_number_integer()) Malformed(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

double NumberField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_number()) Malformed(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

json NodeToJson(const FittedTree& tree, int index) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  json out;
  out["n"] = node.n;
  out["entropy"] = node.entropy;
  if (node.is_leaf) {
    out["label"] = node.label;
    out["reason"] = LeafReasonName(node.reason);
    return out;
  }
  out["alpha"] = node.alpha;
  out["c"] = node.c;
  if (node.kind == SplitKind::kRule) {
    out["rule"] = node.rule;
  } else {
    out["rule"] = "entropy";
    out["child_entropy"] = node.child_entropy;
  }
  if (node.axis_fallback) out["axis_fallback"] = true;
  out["left"] = NodeToJson(tree, node.left);
  out["right"] = NodeToJson(tree, node.right);
  return out;
}

// Appends the subtree rooted at `doc` in preorder, matching the order the
// builders use.
int NodeFromJson(const json& doc, int depth, const FittedTree& tree,
                 std::vector<TreeNode>& nodes) {
  if (!doc.is_object()) Malformed("node must be an object");
  if (depth > 10000) Malformed("tree too deep");
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  TreeNode node;
  node.depth = depth;
  node.n = IntField(doc, "n");
  node.entropy = NumberField(doc, "entropy");
  if (doc.contains("label")) {
    node.is_leaf = true;
    node.label = IntField(doc, "label");
    if (!std::binary_search(tree.classes.begin(), tree.classes.end(), node.label)) {
      Malformed("leaf label " + std::to_string(node.label) + " is not a class");
    }
    const json& reason = Field(doc, "reason");
    if (!reason.is_string()) Malformed("'reason' must be a string");
    node.reason = ParseLeafReason(reason.get<std::string>());
    nodes[static_cast<std::size_t>(index)] = std::move(node);
    return index;
  }
  node.is_leaf = false;
  const json& alpha = Field(doc, "alpha");
  if (!alpha.is_array() || static_cast<int>(alpha.size()) != tree.n_features) {
    Malformed("'alpha' must hold n_features numbers");
  }
  for (const json& a : alpha) {
    if (!a.is_number()) Malformed("'alpha' must hold numbers");
    node.alpha.push_back(a.get<double>());
  }
  node.c = NumberField(doc, "c");
  const json& rule = Field(doc, "rule");
  if (rule.is_string() && rule.get<std::string>() == "entropy") {
    node.kind = SplitKind::kEntropy;
    node.child_entropy = NumberField(doc, "child_entropy");
  } else if (rule.is_number_integer() && rule.get<int>() >= 1 &&
             rule.get<int>() <= 8) {
    node.kind = SplitKind::kRule;
    node.rule = rule.get<int>();
  } else {
    Malformed("'rule' must be 1..8 or \"entropy\"");
  }
  if (const auto it = doc.find("axis_fallback"); it != doc.end()) {
    if (!it->is_boolean()) Malformed("'axis_fallback' must be a boolean");
    node.axis_fallback = it->get<bool>();
  }
  node.left = NodeFromJson(Field(doc, "left"), depth + 1, tree, nodes);
  node.right = NodeFromJson(Field(doc, "right"), depth + 1, tree, nodes);
  nodes[static_cast<std::size_t>(index)] = std::move(node);
  return index;
}

}  // namespace

json FitConfigToJson(const FitConfig& config) {
  json out;
  out["index"] = config.index.kind == IndexKind::kLda ? "lda" : "pda";
  out["lambda"] = config.index.lambda;
  out["rule"] = config.rule.id();
  out["min_node_size"] = config.min_node_size;
  out["entropy_threshold"] = config.entropy_threshold;
  out["max_depth"] = config.max_depth;
  out["seed"] = config.seed;
  return out;
}

FitConfig FitConfigFromJson(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "fit config must be an object");
  }
  FitConfig config;
  try {
    if (doc.contains("index")) {
      const std::string index = doc.at("index").get<std::string>();
      if (index == "lda") {
        config.index = IndexConfig::Lda();
      } else if (index == "pda") {
        config.index = IndexConfig::Pda();
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "index must be \"lda\" or \"pda\", got \"" + index + "\"");
      }
    }
    if (doc.contains("lambda")) config.index.lambda = doc.at("lambda").get<double>();
    if (doc.contains("rule")) config.rule = SplitRule(doc.at("rule").get<int>());
    if (doc.contains("min_node_size")) {
      config.min_node_size = doc.at("min_node_size").get<int>();
    }
    if (doc.contains("entropy_threshold")) {
      config.entropy_threshold = doc.at("entropy_threshold").get<double>();
    }
    if (doc.contains("max_depth")) config.max_depth = doc.at("max_depth").get<int>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid fit config: ") + e.what());
  }
  config.Validate();
  return config;
}

json ModelToJson(const FittedTree& tree) {
  json out;
  out["format"] = kFormatName;
  out["version"] = kModelFormatVersion;
  out["variant"] = VariantName(tree.variant);
  out["classes"] = tree.classes;
  out["class_names"] = tree.class_names;
  out["n_features"] = tree.n_features;
  out["config"] = FitConfigToJson(tree.config);
  out["warnings"] = tree.warnings;
  out["root"] = NodeToJson(tree, 0);
  return out;
}

std::string SerializeModel(const FittedTree& tree) {
  return ModelToJson(tree).dump(1);
}

FittedTree ModelFromJson(const json& doc) {
  if (!doc.is_object()) Malformed("expected an object");
  const json& format = Field(doc, "format");
  if (!format.is_string() || format.get<std::string>() != kFormatName) {
    Malformed("not a pptree model");
  }
  const int version = IntField(doc, "version");
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported model version " + std::to_string(version));
  }
  FittedTree tree;
  try {
    const json& variant = Field(doc, "variant");
    if (!variant.is_string()) Malformed("'variant' must be a string");
    tree.variant = ParseVariant(variant.get<std::string>());
    tree.n_features = IntField(doc, "n_features");
    if (tree.n_features < 1) Malformed("'n_features' must be positive");
    tree.classes = Field(doc, "classes").get<std::vector<int>>();
    tree.class_names = Field(doc, "class_names").get<std::vector<std::string>>();
    tree.config = FitConfigFromJson(Field(doc, "config"));
    if (doc.contains("warnings")) {
      tree.warnings = doc.at("warnings").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    Malformed(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    Malformed(e.what());
  }
  if (tree.classes.empty() ||
      !std::is_sorted(tree.classes.begin(), tree.classes.end())) {
    Malformed("'classes' must be a nonempty ascending list");
  }
  for (int c : tree.classes) {
    if (c < 1 || c > static_cast<int>(tree.class_names.size())) {
      Malformed("class id " + std::to_string(c) + " has no name");
    }
  }
  std::vector<TreeNode> nodes;
  NodeFromJson(Field(doc, "root"), 0, tree, nodes);
  tree.nodes = std::move(nodes);
  return tree;
}

FittedTree DeserializeModel(std::string_view text) {
  if (text.empty()) Malformed("empty document");
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Malformed(e.what());
  }
  return ModelFromJson(doc);
}

}  // namespace pptree
