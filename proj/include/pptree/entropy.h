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

#ifndef PPTREE_ENTROPY_H_
#define PPTREE_ENTROPY_H_

#include <span>

namespace pptree {

// -sum_j p_j log p_j with natural log and 0 log 0 = 0. Classes are summed in
// index order with p_j = count_j / total. Throws kEmptySubset when the counts
// sum to zero.
double Entropy(std::span<const int> class_counts);

// (n_L E(L) + n_R E(R)) / (n_L + n_R).
double CombinedEntropy(std::span<const int> left_counts,
                       std::span<const int> right_counts);

struct EntropySplit {
  double c = 0.0;
  double combined = 0.0;
};

// Scans every midpoint between consecutive distinct sorted values of `z` and
// returns the one minimizing the combined entropy of {z < c} and {z >= c};
// ties (within 1e-12) go to the smallest c. `labels` are dense class indices in
// [0, num_classes). Throws kNoCandidateSplits when fewer than two distinct
// values exist.
EntropySplit BestEntropySplit(std::span<const double> z,
                              std::span<const int> labels, int num_classes);

// Midpoint of a < b that satisfies a < m <= b.
double Midpoint(double a, double b);

}  // namespace pptree

#endif  // PPTREE_ENTROPY_H_
