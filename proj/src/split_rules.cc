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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pptree/error.h"

namespace pptree {
namespace {

// w_lower * a + w_upper * b with w_lower = d_upper / (d_lower + d_upper).
double Weighted(double a, double b, double d_lower, double d_upper) {
  const double denom = d_lower + d_upper;
  return (d_upper / denom) * a + (d_lower / denom) * b;
}

}  // namespace

SplitRule::SplitRule(int id) : id_(id) {
  if (id < 1 || id > 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "split rule " + std::to_string(id) +
                    " is outside the valid range 1-8");
  }
}

double QuantileType7(std::span<const double> sorted, double prob) {
  if (sorted.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "empty group");
  }
  const double h = static_cast<double>(sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

GroupStats SummarizeGroup(std::span<const double> z) {
  if (z.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "empty group");
  }
  GroupStats s;
  s.count = static_cast<int>(z.size());
  double sum = 0.0;
  for (double v : z) sum += v;
  s.mean = sum / static_cast<double>(s.count);

  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = QuantileType7(sorted, 0.5);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : z) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.iqr = QuantileType7(sorted, 0.75) - QuantileType7(sorted, 0.25);
  }
  return s;
}

SplitPoint SplitValue(SplitRule rule, const GroupStats& lower,
                      const GroupStats& upper) {
  if (lower.count < 1 || upper.count < 1) {
    throw Error(ErrorCode::kEmptyGroup, "empty group");
  }
  const double n1 = lower.count;
  const double n2 = upper.count;
  SplitPoint out;
  out.rule_used = rule.id();
  switch (rule.id()) {
    case 1:
      out.c = 0.5 * lower.mean + 0.5 * upper.mean;
      break;
    case 2:
      out.c = Weighted(lower.mean, upper.mean, n1, n2);
      break;
    case 3:
      if (lower.sd + upper.sd > 0.0) {
        out.c = Weighted(lower.mean, upper.mean, lower.sd, upper.sd);
      } else {
        out = {0.5 * lower.mean + 0.5 * upper.mean, 1, true};
      }
      break;
    case 4: {
      const double se1 = lower.sd / std::sqrt(n1);
      const double se2 = upper.sd / std::sqrt(n2);
      if (se1 + se2 > 0.0) {
        out.c = Weighted(lower.mean, upper.mean, se1, se2);
      } else {
        out = {0.5 * lower.mean + 0.5 * upper.mean, 1, true};
      }
      break;
    }
    case 5:
      out.c = 0.5 * lower.median + 0.5 * upper.median;
      break;
    case 6:
      out.c = Weighted(lower.median, upper.median, n1, n2);
      break;
    case 7:
      if (lower.iqr + upper.iqr > 0.0) {
        out.c = Weighted(lower.median, upper.median, lower.iqr, upper.iqr);
      } else {
        out = {0.5 * lower.median + 0.5 * upper.median, 5, true};
      }
      break;
    case 8: {
      const double d1 = lower.iqr / std::sqrt(n1);
      const double d2 = upper.iqr / std::sqrt(n2);
      if (d1 + d2 > 0.0) {
        out.c = Weighted(lower.median, upper.median, d1, d2);
      } else {
        out = {0.5 * lower.median + 0.5 * upper.median, 5, true};
      }
      break;
    }
  }
  return out;
}

}  // namespace pptree
