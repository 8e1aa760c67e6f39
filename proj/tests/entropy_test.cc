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

#include "pptree/entropy.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "pptree/error.h"

namespace pptree {
namespace {

TEST(EntropyTest, PureIsZero) {
  EXPECT_EQ(Entropy(std::vector<int>{10, 0, 0}), 0.0);
}

TEST(EntropyTest, EvenSplit) {
  EXPECT_NEAR(Entropy(std::vector<int>{5, 5}), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(Entropy(std::vector<int>{5, 5}), 0.693147, 1e-6);
}

TEST(EntropyTest, UniformOverFour) {
  EXPECT_NEAR(Entropy(std::vector<int>{1, 1, 1, 1}), std::log(4.0), 1e-15);
}

TEST(EntropyTest, EmptyThrows) {
  try {
    Entropy(std::vector<int>{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySubset);
  }
}

TEST(EntropyTest, CombinedIsSizeWeighted) {
  // Left pure (4), right even over two classes (2 + 2): (0 * 4 + ln2 * 4) / 8.
  EXPECT_NEAR(CombinedEntropy(std::vector<int>{4, 0}, std::vector<int>{2, 2}),
              std::numbers::ln2 / 2.0, 1e-15);
}

TEST(BestEntropySplitTest, HandExample) {
  const std::vector<double> z{0, 1, 2, 3};
  const std::vector<int> labels{0, 0, 1, 1};
  const EntropySplit s = BestEntropySplit(z, labels, 2);
  EXPECT_EQ(s.c, 1.5);
  EXPECT_EQ(s.combined, 0.0);
}

TEST(BestEntropySplitTest, PureInput) {
  const EntropySplit s = BestEntropySplit(std::vector<double>{0, 1}, std::vector<int>{0, 0}, 1);
  EXPECT_EQ(s.c, 0.5);
  EXPECT_EQ(s.combined, 0.0);
}

TEST(BestEntropySplitTest, UnsortedInputAndDuplicates) {
  const std::vector<double> z{3, 0, 2, 0, 1, 3};
  const std::vector<int> labels{1, 0, 1, 0, 0, 1};
  const EntropySplit s = BestEntropySplit(z, labels, 2);
  EXPECT_EQ(s.c, 1.5);
  EXPECT_EQ(s.combined, 0.0);
}

TEST(BestEntropySplitTest, TiesGoToSmallestC) {
  // a | b a | b: splits at 0.5 and 2.5 both leave one pure side of size 1.
  const std::vector<double> z{0, 1, 2, 3};
  const std::vector<int> labels{0, 1, 0, 1};
  const EntropySplit s = BestEntropySplit(z, labels, 2);
  EXPECT_EQ(s.c, 0.5);
}

TEST(BestEntropySplitTest, AllEqualThrows) {
  try {
    BestEntropySplit(std::vector<double>{2, 2, 2}, std::vector<int>{0, 1, 0}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoCandidateSplits);
  }
}

TEST(BestEntropySplitTest, MidpointOfAdjacentDoubles) {
  const double a = 1.0;
  const double b = std::nextafter(1.0, 2.0);
  const double m = Midpoint(a, b);
  EXPECT_LT(a, m);
  EXPECT_LE(m, b);
}

TEST(BestEntropySplitTest, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 200)(rng);
    const int g = std::uniform_int_distribution<int>(1, 5)(rng);
    // Coarse values force duplicates and tied candidates.
    const int levels = std::uniform_int_distribution<int>(2, 40)(rng);
    std::uniform_int_distribution<int> value(0, levels - 1);
    std::uniform_int_distribution<int> label(0, g - 1);
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      z[static_cast<std::size_t>(i)] = value(rng) * 0.25 - 3.0;
      labels[static_cast<std::size_t>(i)] = label(rng);
    }
    const auto expected = oracle::BruteForceEntropySplit(z, labels);
    if (!expected) {
      EXPECT_THROW(BestEntropySplit(z, labels, g), Error);
      continue;
    }
    const EntropySplit got = BestEntropySplit(z, labels, g);
    EXPECT_EQ(got.c, expected->c) << "trial " << trial;
    EXPECT_NEAR(got.combined, expected->combined, 1e-12) << "trial " << trial;
  }
}

}  // namespace
}  // namespace pptree
