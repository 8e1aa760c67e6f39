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

#ifndef PPTREE_SPLIT_RULES_H_
#define PPTREE_SPLIT_RULES_H_

#include <span>

namespace pptree {

// Summary of one group's projected values. sd uses the n - 1 denominator;
// median and IQR use linear-interpolation ("type 7") quantiles. Singleton
// groups have sd = iqr = 0.
struct GroupStats {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
  double iqr = 0.0;
  int count = 0;
};

// One of the eight class-pair split rules:
//   1 mean, 2 sample-size weighted mean, 3 sd weighted mean,
//   4 standard-error weighted mean, 5 median, 6 sample-size weighted median,
//   7 IQR weighted median, 8 sample-size and IQR weighted median.
class SplitRule {
 public:
  // Throws kInvalidArgument outside 1..8.
  explicit SplitRule(int id);

  int id() const { return id_; }
  // Rules 1-4 are centred on means, 5-8 on medians.
  bool uses_median() const { return id_ >= 5; }

  friend bool operator==(SplitRule, SplitRule) = default;

 private:
  int id_;
};

struct SplitPoint {
  double c = 0.0;
  // Rule actually applied (differs from the request after a fallback).
  int rule_used = 1;
  bool fell_back = false;
};

// Throws kEmptyGroup on an empty input.
GroupStats SummarizeGroup(std::span<const double> z);

// Linear-interpolation quantile of sorted data, prob in [0, 1].
double QuantileType7(std::span<const double> sorted, double prob);

// Split value between two groups; `lower` is the group with the smaller
// projected mean. Rules 3 and 4 fall back to rule 1 when their weight
// denominator is zero; rules 7 and 8 fall back to rule 5.
//
// Rule 4 is applied exactly as tabulated, with s_2/sqrt(n_2) weighting the
// lower group's mean.
SplitPoint SplitValue(SplitRule rule, const GroupStats& lower,
                      const GroupStats& upper);

}  // namespace pptree

#endif  // PPTREE_SPLIT_RULES_H_
