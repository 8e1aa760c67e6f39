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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pptree/error.h"

namespace pptree {

double Entropy(std::span<const int> class_counts) {
  long long total = 0;
  for (int count : class_counts) total += count;
  if (total <= 0) {
    throw Error(ErrorCode::kEmptySubset, "entropy of an empty subset");
  }
  double e = 0.0;
  for (int count : class_counts) {
    if (count > 0) {
      const double p = static_cast<double>(count) / static_cast<double>(total);
      e -= p * std::log(p);
    }
  }
  return e;
}

double CombinedEntropy(std::span<const int> left_counts,
                       std::span<const int> right_counts) {
  const double n_left =
      std::accumulate(left_counts.begin(), left_counts.end(), 0.0);
  const double n_right =
      std::accumulate(right_counts.begin(), right_counts.end(), 0.0);
  return (n_left * Entropy(left_counts) + n_right * Entropy(right_counts)) /
         (n_left + n_right);
}

double Midpoint(double a, double b) {
  const double m = 0.5 * (a + b);
  return (a < m && m <= b) ? m : b;
}

EntropySplit BestEntropySplit(std::span<const double> z,
                              std::span<const int> labels, int num_classes) {
  if (z.size() != labels.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one label per value required");
  }
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });

  std::vector<int> left(static_cast<std::size_t>(num_classes), 0);
  std::vector<int> right(static_cast<std::size_t>(num_classes), 0);
  for (int label : labels) ++right[static_cast<std::size_t>(label)];

  // Candidates are visited in increasing c; values within kTieTolerance of
  // the minimum count as ties and the smallest c wins.
  constexpr double kTieTolerance = 1e-12;
  std::vector<EntropySplit> candidates;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const auto label = static_cast<std::size_t>(labels[order[k]]);
    ++left[label];
    --right[label];
    const double here = z[order[k]];
    const double next = z[order[k + 1]];
    if (!(here < next)) continue;
    candidates.push_back({Midpoint(here, next), CombinedEntropy(left, right)});
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoCandidateSplits,
                "no candidate splits: all projected values are identical");
  }
  double lowest = candidates.front().combined;
  for (const EntropySplit& s : candidates) lowest = std::min(lowest, s.combined);
  EntropySplit best;
  for (const EntropySplit& s : candidates) {
    if (s.combined <= lowest + kTieTolerance) {
      best = s;
      break;
    }
  }
  return best;
}

}  // namespace pptree
