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

#include "pptree/split_rules.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "pptree/error.h"

namespace pptree {
namespace {

GroupStats Stats(double mean, int count, double sd = 0.0) {
  GroupStats s;
  s.mean = mean;
  s.median = mean;
  s.sd = sd;
  s.iqr = sd;
  s.count = count;
  return s;
}

oracle::Stats ToOracle(const GroupStats& s) {
  return {s.mean, s.median, s.sd, s.iqr, s.count};
}

TEST(SummarizeGroupTest, SmallList) {
  const std::vector<double> z{1, 2, 3};
  const GroupStats s = SummarizeGroup(z);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_DOUBLE_EQ(s.sd, 1.0);
  EXPECT_DOUBLE_EQ(s.iqr, 1.0);
  EXPECT_EQ(s.count, 3);
}

TEST(SummarizeGroupTest, Singleton) {
  const std::vector<double> z{5};
  const GroupStats s = SummarizeGroup(z);
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.median, 5.0);
  EXPECT_EQ(s.sd, 0.0);
  EXPECT_EQ(s.iqr, 0.0);
  EXPECT_EQ(s.count, 1);
}

TEST(SummarizeGroupTest, Constant) {
  const std::vector<double> z{0, 0, 0, 0};
  const GroupStats s = SummarizeGroup(z);
  EXPECT_EQ(s.sd, 0.0);
  EXPECT_EQ(s.iqr, 0.0);
}

TEST(SummarizeGroupTest, Type7Quantiles) {
  // Quartiles of 1..10 under linear interpolation: 3.25 and 7.75.
  const std::vector<double> z{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
  const GroupStats s = SummarizeGroup(z);
  EXPECT_DOUBLE_EQ(s.median, 5.5);
  EXPECT_DOUBLE_EQ(s.iqr, 4.5);
}

TEST(SummarizeGroupTest, EmptyThrows) {
  try {
    SummarizeGroup(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

TEST(SplitRuleTest, RangeIsOneToEight) {
  for (int id = 1; id <= 8; ++id) EXPECT_NO_THROW(SplitRule{id});
  for (int id : {0, 9, -1}) {
    try {
      SplitRule rule(id);
      FAIL();
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("1-8"), std::string::npos);
    }
  }
}

TEST(SplitValueTest, Rule1Midpoint) {
  EXPECT_DOUBLE_EQ(SplitValue(SplitRule(1), Stats(0, 5), Stats(2, 7)).c, 1.0);
}

TEST(SplitValueTest, Rule2SizeWeighted) {
  EXPECT_DOUBLE_EQ(SplitValue(SplitRule(2), Stats(0, 1), Stats(4, 3)).c, 1.0);
}

TEST(SplitValueTest, Rule3SdWeighted) {
  EXPECT_DOUBLE_EQ(SplitValue(SplitRule(3), Stats(0, 4, 1), Stats(3, 4, 2)).c, 1.0);
}

TEST(SplitValueTest, Rule5MedianMidpoint) {
  GroupStats a = Stats(0, 3);
  GroupStats b = Stats(0, 3);
  a.median = -1;
  b.median = 3;
  EXPECT_DOUBLE_EQ(SplitValue(SplitRule(5), a, b).c, 1.0);
}

TEST(SplitValueTest, Rule4StandardErrorWeighted) {
  // se1 = 2 / 2 = 1, se2 = 3 / 1 = 3 -> c = 3/4 * 0 + 1/4 * 8 = 2.
  EXPECT_DOUBLE_EQ(SplitValue(SplitRule(4), Stats(0, 4, 2), Stats(8, 1, 3)).c, 2.0);
}

TEST(SplitValueTest, ZeroSpreadFallsBack) {
  for (int rule : {3, 4}) {
    const SplitPoint p = SplitValue(SplitRule(rule), Stats(0, 1), Stats(4, 1));
    EXPECT_TRUE(p.fell_back);
    EXPECT_EQ(p.rule_used, 1);
    EXPECT_DOUBLE_EQ(p.c, 2.0);
  }
  for (int rule : {7, 8}) {
    const SplitPoint p = SplitValue(SplitRule(rule), Stats(0, 1), Stats(4, 1));
    EXPECT_TRUE(p.fell_back);
    EXPECT_EQ(p.rule_used, 5);
    EXPECT_DOUBLE_EQ(p.c, 2.0);
  }
  EXPECT_FALSE(SplitValue(SplitRule(3), Stats(0, 2, 1), Stats(4, 2, 0)).fell_back);
}

class RandomStats {
 public:
  explicit RandomStats(std::uint64_t seed) : rng_(seed) {}

  std::pair<GroupStats, GroupStats> Next() {
    GroupStats a = One();
    GroupStats b = One();
    if (b.mean < a.mean) std::swap(a.mean, b.mean);
    if (b.median < a.median) std::swap(a.median, b.median);
    return {a, b};
  }

 private:
  GroupStats One() {
    std::uniform_real_distribution<double> loc(-50.0, 50.0);
    std::uniform_real_distribution<double> spread(0.0, 5.0);
    std::uniform_int_distribution<int> count(1, 200);
    std::bernoulli_distribution zero(0.1);
    GroupStats s;
    s.mean = loc(rng_);
    s.median = loc(rng_);
    s.count = count(rng_);
    s.sd = zero(rng_) ? 0.0 : spread(rng_);
    s.iqr = zero(rng_) ? 0.0 : spread(rng_);
    return s;
  }

  std::mt19937_64 rng_;
};

TEST(SplitValueTest, MatchesFormulaOracle) {
  RandomStats gen(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [a, b] = gen.Next();
    for (int rule = 1; rule <= 8; ++rule) {
      const double c = SplitValue(SplitRule(rule), a, b).c;
      EXPECT_NEAR(c, oracle::RuleFormula(rule, ToOracle(a), ToOracle(b)), 1e-12)
          << "rule " << rule << " trial " << trial;
    }
  }
}

TEST(SplitValueTest, LiesBetweenCenters) {
  RandomStats gen(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [a, b] = gen.Next();
    for (int rule = 1; rule <= 8; ++rule) {
      const SplitRule r(rule);
      const double lo = r.uses_median() ? a.median : a.mean;
      const double hi = r.uses_median() ? b.median : b.mean;
      const double c = SplitValue(r, a, b).c;
      EXPECT_GE(c, lo - 1e-12);
      EXPECT_LE(c, hi + 1e-12);
    }
  }
}

TEST(SplitValueTest, MidpointRulesAreSymmetric) {
  RandomStats gen(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [a, b] = gen.Next();
    for (int rule : {1, 5}) {
      EXPECT_DOUBLE_EQ(SplitValue(SplitRule(rule), a, b).c,
                       SplitValue(SplitRule(rule), b, a).c);
    }
  }
}

}  // namespace
}  // namespace pptree
