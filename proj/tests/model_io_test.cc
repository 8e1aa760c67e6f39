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

#include <random>

#include <gtest/gtest.h>

#include "pptree/error.h"
#include "pptree/simulate.h"
#include "test_util.h"

namespace pptree {
namespace {

Eigen::MatrixXd Probe(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-15, 15);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

TEST(ModelIoTest, RoundTripPreservesStructureAndPredictions) {
  SimSpec spec;
  spec.k = 3;
  const Dataset d = Simulate(spec);
  const Eigen::MatrixXd probe = Probe(1000, 2, 4);
  for (const Variant v : {Variant::kOriginal, Variant::kMod1, Variant::kMod2, Variant::kAxisBaseline}) {
    FitConfig cfg;
    cfg.rule = SplitRule(3);
    const FittedTree tree = Fit(d, v, cfg);
    const std::string text = SerializeModel(tree);
    const FittedTree back = DeserializeModel(text);
    EXPECT_EQ(SerializeModel(back), text);
    ASSERT_EQ(back.nodes.size(), tree.nodes.size());
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      EXPECT_EQ(back.nodes[k].alpha, tree.nodes[k].alpha);
      EXPECT_EQ(back.nodes[k].c, tree.nodes[k].c);
      EXPECT_EQ(back.nodes[k].label, tree.nodes[k].label);
      EXPECT_EQ(back.nodes[k].is_leaf, tree.nodes[k].is_leaf);
    }
    EXPECT_EQ(back.variant, v);
    EXPECT_EQ(back.config.rule.id(), 3);
    EXPECT_EQ(PredictAll(back, probe), PredictAll(tree, probe));
  }
}

TEST(ModelIoTest, DocumentShape) {
  const Dataset d = testing::SeparableDataset(2, 2, 10, 1);
  const nlohmann::json doc = ModelToJson(FitOriginal(d, FitConfig{}));
  EXPECT_EQ(doc.at("version"), kModelFormatVersion);
  EXPECT_EQ(doc.at("variant"), "original");
  EXPECT_EQ(doc.at("n_features"), 2);
  EXPECT_EQ(doc.at("classes"), nlohmann::json({1, 2}));
  const nlohmann::json& root = doc.at("root");
  EXPECT_EQ(root.at("alpha").size(), 2u);
  EXPECT_TRUE(root.contains("c"));
  EXPECT_EQ(root.at("rule"), 1);
  EXPECT_TRUE(root.at("left").contains("label"));
  EXPECT_TRUE(root.at("right").contains("label"));
}

TEST(ModelIoTest, EntropySplitsAreTagged) {
  const Dataset d = testing::SeparableDataset(2, 2, 10, 1);
  const nlohmann::json doc = ModelToJson(FitMod2(d, FitConfig{}));
  EXPECT_EQ(doc.at("root").at("rule"), "entropy");
}

TEST(ModelIoTest, EmptyDocumentFails) {
  EXPECT_THROW(DeserializeModel(""), Error);
  EXPECT_THROW(DeserializeModel("{}"), Error);
}

TEST(ModelIoTest, TruncatedDocumentFails) {
  const Dataset d = testing::SeparableDataset(3, 2, 10, 1);
  const std::string text = SerializeModel(FitOriginal(d, FitConfig{}));
  for (std::size_t cut : {text.size() / 4, text.size() / 2, text.size() - 2}) {
    try {
      DeserializeModel(text.substr(0, cut));
      FAIL() << cut;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  }
}

TEST(ModelIoTest, UnknownVersionFails) {
  const Dataset d = testing::SeparableDataset(2, 2, 10, 1);
  nlohmann::json doc = ModelToJson(FitOriginal(d, FitConfig{}));
  doc["version"] = kModelFormatVersion + 1;
  EXPECT_THROW(ModelFromJson(doc), Error);
}

TEST(ModelIoTest, StructuralErrorsAreRejected) {
  const Dataset d = testing::SeparableDataset(2, 2, 10, 1);
  const nlohmann::json good = ModelToJson(FitOriginal(d, FitConfig{}));
  nlohmann::json bad = good;
  bad["root"]["alpha"] = {1.0, 0.0, 0.0};
  EXPECT_THROW(ModelFromJson(bad), Error);
  bad = good;
  bad["root"]["left"]["label"] = 7;
  EXPECT_THROW(ModelFromJson(bad), Error);
  bad = good;
  bad["root"].erase("right");
  EXPECT_THROW(ModelFromJson(bad), Error);
  bad = good;
  bad["format"] = "something-else";
  EXPECT_THROW(ModelFromJson(bad), Error);
}

TEST(FitConfigJsonTest, RoundTrip) {
  FitConfig cfg;
  cfg.index = IndexConfig::Pda(0.25);
  cfg.rule = SplitRule(7);
  cfg.min_node_size = 4;
  cfg.entropy_threshold = 0.125;
  cfg.max_depth = 9;
  cfg.seed = 77;
  const FitConfig back = FitConfigFromJson(FitConfigToJson(cfg));
  EXPECT_EQ(back.index.kind, IndexKind::kPda);
  EXPECT_EQ(back.index.lambda, 0.25);
  EXPECT_EQ(back.rule.id(), 7);
  EXPECT_EQ(back.min_node_size, 4);
  EXPECT_EQ(back.entropy_threshold, 0.125);
  EXPECT_EQ(back.max_depth, 9);
  EXPECT_EQ(back.seed, 77u);
}

TEST(FitConfigJsonTest, DefaultsAndErrors) {
  const FitConfig cfg = FitConfigFromJson(nlohmann::json::object());
  EXPECT_EQ(cfg.rule.id(), 1);
  EXPECT_EQ(cfg.min_node_size, 10);
  EXPECT_THROW(FitConfigFromJson({{"rule", 9}}), Error);
  EXPECT_THROW(FitConfigFromJson({{"index", "holes"}}), Error);
  EXPECT_THROW(FitConfigFromJson({{"min_node_size", "ten"}}), Error);
}

}  // namespace
}  // namespace pptree
