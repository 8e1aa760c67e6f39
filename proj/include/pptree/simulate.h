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

#ifndef PPTREE_SIMULATE_H_
#define PPTREE_SIMULATE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pptree/dataset.h"

namespace pptree {

enum class Scenario { kBasic, kOutlier, kMixture };

std::string_view ScenarioName(Scenario scenario);
// "basic", "outlier", "mixsim".
Scenario ParseScenario(std::string_view name);

// Parameters of the 2D app scenarios. Every simulator is a pure function of
// the spec, seed included.
struct SimSpec {
  Scenario scenario = Scenario::kBasic;
  int n = 300;
  int k = 3;
  // Basic/outlier: distance between consecutive class means, in units of
  // the within-class sd (1).
  double separation = 6.0;
  // Basic/outlier: within-class correlation of x1 and x2. 0 gives isotropic
  // classes; negative values elongate classes across the mean axis.
  double correlation = 0.0;
  // Outlier: share of class 2 moved to a cluster beyond class 1.
  double outlier_fraction = 0.15;
  // Mixture: overlap knob in [0, 1); larger means harder.
  double overlap = 0.05;
  // Mixture: accepted for interface parity, has no effect.
  std::optional<double> max_overlap;
  std::uint64_t seed = 1;

  // Throws kInvalidArgument.
  void Validate() const;
};

// Non-fatal notes about a spec (e.g. ignored knobs).
std::vector<std::string> SimWarnings(const SimSpec& spec);

// K classes on the (1,1)/sqrt(2) line, means `separation` apart and centred
// on the origin; sizes n / K with the remainder going to the first classes.
// Rows are grouped by class in ascending order.
Dataset SimBasic(const SimSpec& spec);

// SimBasic, except that round(outlier_fraction * n_2) points of class 2 are
// drawn around a centre one spacing beyond class 1 on the far side from
// class 2. Those rows follow the rest of class 2.
Dataset SimOutlier(const SimSpec& spec);

// Generating parameters of the mixture scenario.
struct MixtureModel {
  std::vector<Eigen::Vector2d> means;
  std::vector<Eigen::Matrix2d> covariances;
  std::vector<int> sizes;
};

// Overlap surrogate: the layout of K means is drawn uniformly in the unit
// square (rejection keeps them apart), covariances get a random rotation and
// eigenvalues in [0.5, 1.5]. The layout is then scaled so the closest pair of
// means sits 2 * z(1 - w/2) apart, w = max(overlap, 1e-4), i.e. at the
// distance where two unit-variance classes misclassify a share w of each
// other. The layout depends only on the seed, so raising the overlap shrinks
// every distance by the same factor.
MixtureModel MixtureComponents(const SimSpec& spec);
Dataset SimMixture(const SimSpec& spec);

Dataset Simulate(const SimSpec& spec);

}  // namespace pptree

#endif  // PPTREE_SIMULATE_H_
